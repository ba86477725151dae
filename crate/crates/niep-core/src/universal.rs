//! Jordan-form enumeration and universal realizability: every Jordan
//! structure allowed by a list is realized from one positive diagonalizable
//! realization by a similarity-shaped nilpotent perturbation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::Zero;

use crate::criteria;
use crate::linalg;
use crate::matrix::{ones, Matrix};
use crate::perturb::brauer_update;
use crate::scalar::{negligible, negligible_c, FieldElem, Scalar};
use crate::spectra::Spectrum;
use crate::{tol, Error, Result};

/// One Jordan canonical form: per distinct eigenvalue, the partition of its
/// algebraic multiplicity into block sizes (descending).  Conjugate
/// eigenvalues carry identical partitions, as any real matrix forces.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanSpec<S: Scalar> {
    pub blocks: Vec<(Complex<S>, Vec<usize>)>,
}

impl<S: Scalar> JordanSpec<S> {
    pub fn order(&self) -> usize {
        self.blocks
            .iter()
            .map(|(_, part)| part.iter().sum::<usize>())
            .sum()
    }
}

/// An eigenvector basis S with S⁻¹AS diagonal; `order[j]` is the eigenvalue
/// of column j, conjugate runs adjacent and conjugated columnwise.
#[derive(Debug, Clone)]
pub struct Diagonalization<S: Scalar> {
    pub s: Matrix<Complex<S>>,
    pub order: Vec<Complex<S>>,
}

/// One realized Jordan form out of [`universal_realizations`].
#[derive(Debug, Clone)]
pub struct UniversalRealization<S: Scalar> {
    pub form: JordanSpec<S>,
    pub matrix: Matrix<S>,
}

fn value_scale<S: Scalar>(values: &[Complex<S>]) -> f64 {
    values.iter().map(|z| z.norm1()).fold(0.0, f64::max)
}

fn same_value<S: Scalar>(a: &Complex<S>, b: &Complex<S>, scale: f64) -> bool {
    let dr = a.re.clone() - b.re.clone();
    let di = a.im.clone() - b.im.clone();
    negligible(&dr, tol::COEFF, scale) && negligible(&di, tol::COEFF, scale)
}

/// Distinct values with multiplicities, in first-appearance order.
fn distinct_values<S: Scalar>(values: &[Complex<S>]) -> Vec<(Complex<S>, usize)> {
    let scale = value_scale(values);
    let mut out: Vec<(Complex<S>, usize)> = Vec::new();
    for z in values {
        match out.iter_mut().find(|(w, _)| same_value(w, z, scale)) {
            Some((_, count)) => *count += 1,
            None => out.push((z.clone(), 1)),
        }
    }
    out
}

/// Representative slots: one per real eigenvalue, one per conjugate pair
/// (carrying the partner), in first-appearance order.
fn conjugate_slots<S: Scalar>(
    values: &[Complex<S>],
) -> Vec<(Complex<S>, usize, Option<Complex<S>>)> {
    let scale = value_scale(values);
    let distinct = distinct_values(values);
    let mut used = vec![false; distinct.len()];
    let mut slots = Vec::new();
    for i in 0..distinct.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let (z, mult) = &distinct[i];
        if negligible(&z.im, tol::COEFF, scale) {
            slots.push((z.clone(), *mult, None));
            continue;
        }
        let want = z.conj_elem();
        let partner = (i + 1..distinct.len())
            .find(|&j| !used[j] && same_value(&distinct[j].0, &want, scale));
        match partner {
            Some(j) => {
                used[j] = true;
                slots.push((z.clone(), *mult, Some(distinct[j].0.clone())));
            }
            None => slots.push((z.clone(), *mult, None)),
        }
    }
    slots
}

/// Integer partitions of `m` with parts descending, enumerated with the
/// largest part increasing: [1,…,1] first, [m] last.
fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=m.min(max) {
            prefix.push(first);
            rec(m - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// All Jordan canonical forms a list admits: the cartesian product of the
/// partitions of each distinct eigenvalue's multiplicity, with conjugate
/// pairs locked to a shared partition.  Deterministic lexicographic order.
pub fn enumerate_jordan_forms<S: Scalar>(s: &Spectrum<S>) -> Vec<JordanSpec<S>> {
    let slots = conjugate_slots(&s.values);
    let menus: Vec<Vec<Vec<usize>>> = slots.iter().map(|(_, m, _)| partitions(*m)).collect();
    let mut forms = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut blocks = Vec::new();
        for (k, (rep, _, partner)) in slots.iter().enumerate() {
            let part = menus[k][idx[k]].clone();
            blocks.push((rep.clone(), part.clone()));
            if let Some(cj) = partner {
                blocks.push((cj.clone(), part));
            }
        }
        forms.push(JordanSpec { blocks });
        let mut advanced = false;
        let mut k = slots.len();
        while k > 0 {
            k -= 1;
            idx[k] += 1;
            if idx[k] < menus[k].len() {
                advanced = true;
                break;
            }
            idx[k] = 0;
        }
        if !advanced {
            return forms;
        }
    }
}

fn normalize_column<S: Scalar>(mut v: Vec<Complex<S>>) -> Vec<Complex<S>> {
    let mut peak = 0;
    for i in 1..v.len() {
        if v[i].norm1() > v[peak].norm1() {
            peak = i;
        }
    }
    let pivot = v[peak].clone();
    if pivot.is_zero() {
        return v;
    }
    for t in v.iter_mut() {
        *t = t.clone() / pivot.clone();
    }
    v
}

/// Eigenvectors for one eigenvalue: exact null-space basis in the rational
/// backend, block inverse iteration at a detuned shift in the float backend.
/// Deterministic seeds keyed by the slot index keep the basis reproducible.
fn eigenvectors_of<S: Scalar>(
    ac: &Matrix<Complex<S>>,
    lam: &Complex<S>,
    mult: usize,
    slot: usize,
) -> Result<Vec<Vec<Complex<S>>>> {
    let n = ac.order();
    if S::EXACT {
        let mut shifted = ac.clone();
        for i in 0..n {
            shifted[(i, i)] = shifted[(i, i)].clone() - lam.clone();
        }
        let basis = linalg::nullspace(&shifted);
        if basis.len() < mult {
            return Err(Error::NotDiagonalizable(format!(
                "eigenvalue {}+{}i has geometric multiplicity {} below {mult}",
                lam.re,
                lam.im,
                basis.len()
            )));
        }
        return Ok(basis.into_iter().take(mult).map(normalize_column).collect());
    }
    let rel = {
        let mag = lam.re.abs() + lam.im.abs();
        if mag > S::one() {
            mag
        } else {
            S::one()
        }
    };
    let scale = ac.inf_norm();
    for attempt in 0..3 {
        let off = rel.clone() * S::from_ratio(1, 100_000_000) * S::from_int([1, 4, 16][attempt]);
        let mut shifted = ac.clone();
        for i in 0..n {
            shifted[(i, i)] = shifted[(i, i)].clone() - lam.clone() - Complex::new(off.clone(), S::zero());
        }
        let mut state: u32 = (slot as u32)
            .wrapping_mul(2_654_435_761)
            .wrapping_add((attempt as u32).wrapping_mul(40_503))
            .wrapping_add(97);
        let mut seeds: Vec<Vec<S>> = Vec::with_capacity(mult);
        for _ in 0..mult {
            let mut col = Vec::with_capacity(n);
            for _ in 0..n {
                state = state.wrapping_mul(1_103_515_245).wrapping_add(12_345);
                let v = ((state >> 16) % 1024) as i64;
                col.push(S::one() + S::from_ratio(v, 2048));
            }
            seeds.push(col);
        }
        let mut block =
            Matrix::from_fn(n, mult, |i, c| Complex::new(seeds[c][i].clone(), S::zero()));
        for _ in 0..50 {
            let solved = match linalg::solve(&shifted, &block) {
                Some(y) => y,
                None => break,
            };
            let mut cols: Vec<Vec<Complex<S>>> = (0..mult)
                .map(|c| normalize_column((0..n).map(|i| solved[(i, c)].clone()).collect()))
                .collect();
            block = Matrix::from_fn(n, mult, |i, c| cols[c][i].clone());
            // Converge well past the final similarity tolerance: the basis
            // inverse can amplify per-column residuals by its condition.
            let converged = cols.iter().all(|col| {
                let av = ac.mul_vec(col);
                (0..n).all(|i| {
                    let r = av[i].clone() - lam.clone() * col[i].clone();
                    negligible_c(&r, tol::EIGENPAIR_REL * 1e-4, scale)
                })
            });
            if converged {
                let span = Matrix::from_fn(n, mult, |i, c| cols[c][i].clone());
                if linalg::rank(&span) < mult {
                    return Err(Error::NotDiagonalizable(format!(
                        "eigenvalue {}+{}i has geometric multiplicity below {mult}",
                        lam.re, lam.im
                    )));
                }
                return Ok(core::mem::take(&mut cols));
            }
        }
    }
    Err(Error::NotDiagonalizable(format!(
        "inverse iteration did not converge at eigenvalue {}+{}i",
        lam.re, lam.im
    )))
}

/// Diagonalizes a matrix with the known spectrum: columns of S are
/// eigenvectors, real eigenvalues first in appearance order, conjugate pairs
/// as adjacent runs with the second run conjugated columnwise.  The
/// similarity S⁻¹AS is verified diagonal before returning.
pub fn eigen_basis<S: Scalar>(a: &Matrix<S>, s: &Spectrum<S>) -> Result<Diagonalization<S>> {
    let n = a.order();
    if s.values.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix order {n} vs spectrum length {}",
            s.values.len()
        )));
    }
    let ac = a.to_complex();
    let slots = conjugate_slots(&s.values);
    let mut columns: Vec<Vec<Complex<S>>> = Vec::with_capacity(n);
    let mut order: Vec<Complex<S>> = Vec::with_capacity(n);
    for (k, (rep, mult, partner)) in slots.iter().enumerate() {
        let vecs = eigenvectors_of(&ac, rep, *mult, k)?;
        for v in &vecs {
            columns.push(v.clone());
            order.push(rep.clone());
        }
        if let Some(cj) = partner {
            for v in &vecs {
                columns.push(v.iter().map(FieldElem::conj_elem).collect());
                order.push(cj.clone());
            }
        }
    }
    if columns.len() != n {
        return Err(Error::NotDiagonalizable(
            "eigenvalue multiplicities do not fill the order".into(),
        ));
    }
    let smat = Matrix::from_fn(n, n, |i, j| columns[j][i].clone());
    let sinv = linalg::inverse(&smat).ok_or_else(|| {
        Error::NotDiagonalizable("eigenvector matrix is singular".into())
    })?;
    if !S::EXACT {
        let cond = smat.inf_norm() * sinv.inf_norm();
        if cond > tol::COND_LIMIT {
            return Err(Error::IllConditioned(format!(
                "eigenvector basis condition estimate {cond:.3e} exceeds the limit"
            )));
        }
    }
    let diag = sinv.mul(&ac).mul(&smat);
    let ascale = a.inf_norm();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                let dev = diag[(i, i)].clone() - order[i].clone();
                if !negligible_c(&dev, tol::EIGENPAIR_REL, ascale) {
                    return Err(Error::NotDiagonalizable(format!(
                        "similarity produced {}+{}i where {}+{}i was declared",
                        diag[(i, i)].re,
                        diag[(i, i)].im,
                        order[i].re,
                        order[i].im
                    )));
                }
            } else if !negligible_c(&diag[(i, j)], tol::EIGENPAIR_REL, ascale) {
                return Err(Error::NotDiagonalizable(
                    "similarity failed to diagonalize".into(),
                ));
            }
        }
    }
    Ok(Diagonalization { s: smat, order })
}

fn inf_norm_scalar<S: Scalar>(m: &Matrix<S>) -> S {
    let mut best = S::zero();
    for i in 0..m.rows() {
        let mut acc = S::zero();
        for j in 0..m.cols() {
            acc = acc + m[(i, j)].abs();
        }
        if acc > best {
            best = acc;
        }
    }
    best
}

/// Realizes one target Jordan form from a positive diagonalizable matrix:
/// reorders the eigenbasis so each target block owns an adjacent column run,
/// places a superdiagonal one inside every run, conjugates back, and adds the
/// resulting real perturbation scaled by `eps` (or an automatic step that
/// provably keeps every entry positive).  The achieved structure is verified
/// by rank chains before returning.
pub fn minc_realize<S: Scalar>(
    a: &Matrix<S>,
    d: &Diagonalization<S>,
    target: &JordanSpec<S>,
    eps: Option<&S>,
) -> Result<Matrix<S>> {
    let n = a.order();
    if d.s.order() != n || target.order() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix order {n}, basis order {}, target order {}",
            d.s.order(),
            target.order()
        )));
    }
    if let Some(e) = eps {
        if e.is_negative() {
            return Err(Error::NegativeEps(format!("eps {e} is negative")));
        }
    }
    let min_a = a
        .min_entry()
        .ok_or_else(|| Error::EmptyInput("matrix has order zero".into()))?;
    if min_a <= S::zero() {
        return Err(Error::ConditionsNotSatisfied(
            "base matrix is not entrywise positive".into(),
        ));
    }
    let scale = value_scale(&d.order);
    let mut used = vec![false; n];
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut links: Vec<usize> = Vec::new();
    for (lam, part) in &target.blocks {
        for &p in part {
            let start = perm.len();
            for _ in 0..p {
                let col = (0..n)
                    .find(|&j| !used[j] && same_value(&d.order[j], lam, scale))
                    .ok_or_else(|| {
                        Error::ConditionsNotSatisfied(format!(
                            "target asks for more copies of {}+{}i than the basis has",
                            lam.re, lam.im
                        ))
                    })?;
                used[col] = true;
                perm.push(col);
            }
            for k in start..start + p - 1 {
                links.push(k);
            }
        }
    }
    let sm = Matrix::from_fn(n, n, |i, j| d.s[(i, perm[j])].clone());
    let sinv = linalg::inverse(&sm).ok_or_else(|| {
        Error::InternalConstructionError("reordered eigenbasis is singular".into())
    })?;
    let mut xc: Matrix<Complex<S>> = Matrix::zeros(n, n);
    for &i in &links {
        xc[(i, i + 1)] = Complex::new(S::one(), S::zero());
    }
    let t = sm.mul(&xc).mul(&sinv);
    let tscale = t.max_norm1();
    let mut p: Matrix<S> = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if !negligible(&t[(i, j)].im, tol::COEFF, tscale) {
                return Err(Error::ComplexPerturbation(format!(
                    "perturbation entry ({i},{j}) has imaginary part {}",
                    t[(i, j)].im
                )));
            }
            p[(i, j)] = t[(i, j)].re.clone();
        }
    }
    let eps_val = match eps {
        Some(e) => e.clone(),
        None => {
            let norm = inf_norm_scalar(&p);
            let denom = if norm > S::one() { norm } else { S::one() };
            min_a.half() / denom
        }
    };
    let m = a.add(&p.scale(&eps_val));
    match m.min_entry() {
        Some(v) if v > S::zero() => {}
        _ => {
            if eps.is_some() {
                return Err(Error::EpsTooLarge(format!(
                    "eps {eps_val} drives an entry of the output nonpositive"
                )));
            }
            return Err(Error::InternalConstructionError(
                "automatic step failed to keep the output positive".into(),
            ));
        }
    }
    for (lam, part) in &target.blocks {
        if lam.im.is_negative() && !negligible(&lam.im, tol::COEFF, scale) {
            continue;
        }
        let mult = part.iter().sum::<usize>();
        let got = jordan_structure(&m, lam, mult)?;
        if got != *part {
            return Err(Error::InternalConstructionError(format!(
                "achieved block sizes {got:?} differ from the target {part:?}"
            )));
        }
    }
    Ok(m)
}

fn rank_of<S: Scalar>(m: &Matrix<S>) -> usize {
    if S::EXACT {
        linalg::rank(m)
    } else {
        linalg::rank_svd(&m.map(|t| t.to_f64()))
    }
}

fn shifted_power_base<S: Scalar>(m: &Matrix<S>, lam: &Complex<S>) -> (Matrix<S>, usize) {
    let n = m.order();
    if negligible(&lam.im, tol::COEFF, lam.norm1()) {
        let mut k = m.clone().drop_tags();
        for i in 0..n {
            k[(i, i)] = k[(i, i)].clone() - lam.re.clone();
        }
        (k, 1)
    } else {
        let two_a = lam.re.clone() + lam.re.clone();
        let modsq = lam.re.clone() * lam.re.clone() + lam.im.clone() * lam.im.clone();
        let msq = m.mul(m);
        let k = Matrix::from_fn(n, n, |i, j| {
            let mut v = msq[(i, j)].clone() - two_a.clone() * m[(i, j)].clone();
            if i == j {
                v = v + modsq.clone();
            }
            v
        });
        (k, 2)
    }
}

/// Ranks of (M−λI)^k for k = 0..=mult; for a conjugate pair the powers are of
/// the real quadratic (M−λI)(M−λ̄I) instead.  This is the raw evidence behind
/// [`jordan_structure`], exposed so callers can print it.
pub fn rank_chain<S: Scalar>(
    m: &Matrix<S>,
    lam: &Complex<S>,
    mult: usize,
) -> Result<Vec<usize>> {
    let n = m.order();
    if mult == 0 || mult > n {
        return Err(Error::DimensionMismatch(format!(
            "multiplicity {mult} incompatible with order {n}"
        )));
    }
    let (base, _) = shifted_power_base(m, lam);
    let mut ranks = Vec::with_capacity(mult + 1);
    ranks.push(n);
    let mut power: Matrix<S> = Matrix::identity(n);
    for _ in 1..=mult {
        power = power.mul(&base);
        ranks.push(rank_of(&power));
    }
    Ok(ranks)
}

/// Jordan block sizes of `m` at one eigenvalue with known algebraic
/// multiplicity, read off the rank chain of powers: the count of blocks of
/// size ≥ k is rank((M−λI)^{k−1}) − rank((M−λI)^k).  A conjugate pair is
/// handled through the real quadratic (M−λI)(M−λ̄I), whose real nullities are
/// twice the complex ones.
pub fn jordan_structure<S: Scalar>(
    m: &Matrix<S>,
    lam: &Complex<S>,
    mult: usize,
) -> Result<Vec<usize>> {
    let divisor = if negligible(&lam.im, tol::COEFF, lam.norm1()) {
        1usize
    } else {
        2usize
    };
    let ranks = rank_chain(m, lam, mult)?;
    let mut counts = Vec::with_capacity(mult);
    for k in 1..=mult {
        if ranks[k] > ranks[k - 1] {
            return Err(Error::RankChainInconsistent(format!(
                "rank grew from {} to {} at power {k}",
                ranks[k - 1],
                ranks[k]
            )));
        }
        let drop = ranks[k - 1] - ranks[k];
        if drop % divisor != 0 {
            return Err(Error::RankChainInconsistent(format!(
                "odd rank drop {drop} for a conjugate pair at power {k}"
            )));
        }
        counts.push(drop / divisor);
    }
    let total: usize = counts.iter().sum();
    if total != mult {
        return Err(Error::RankChainInconsistent(format!(
            "rank chain absorbs {total} of the declared multiplicity {mult}"
        )));
    }
    let mut part = Vec::new();
    for size in (1..=mult).rev() {
        let larger = if size < mult { counts[size] } else { 0 };
        if counts[size - 1] < larger {
            return Err(Error::RankChainInconsistent(format!(
                "block counts increase between sizes {size} and {}",
                size + 1
            )));
        }
        for _ in 0..counts[size - 1] - larger {
            part.push(size);
        }
    }
    Ok(part)
}

/// Every realization the criteria catalog produces for the exact list, in
/// the catalog's dispatch order.
fn candidate_bases<S: Scalar>(s: &Spectrum<S>) -> Vec<Matrix<S>> {
    criteria::CriterionKind::ALL
        .iter()
        .filter_map(|&kind| criteria::realize_by(kind, s).ok())
        .collect()
}

/// A positive diagonalizable matrix with the given spectrum, built from the
/// criteria catalog: a direct realization when one happens to be positive,
/// otherwise a realization of {λ₁−δ, λ₂, …} spread by the rank-one update
/// (δ/n)·eeᵀ, which restores λ₁ exactly and makes every entry positive.
/// Different catalog realizers leave different eigenvalue geometries, so
/// all of them are tried at every stage.
pub fn positive_realization<S: Scalar>(s: &Spectrum<S>) -> Result<Matrix<S>> {
    for m in candidate_bases(s) {
        let positive = m.min_entry().map_or(false, |v| v > S::zero());
        if positive && eigen_basis(&m, s).is_ok() {
            return Ok(m);
        }
    }
    let head = s.perron();
    let n = s.order();
    let guide = match &s.tail_max {
        Some(t) => {
            let gap = head.clone() - t.clone();
            if gap > S::zero() {
                gap
            } else {
                head.clone()
            }
        }
        None => head.clone(),
    };
    if guide > S::zero() {
        for k in 1..=6 {
            let delta = guide.clone() / S::from_int(1 << k);
            let mut reduced = vec![Complex::new(head.clone() - delta.clone(), S::zero())];
            reduced.extend_from_slice(s.tail());
            let Ok(rs) = Spectrum::normalize(&reduced) else {
                continue;
            };
            let share = delta.clone() / S::from_int(n as i64);
            let q: Vec<S> = (0..n).map(|_| share.clone()).collect();
            let reduced_head = head.clone() - delta.clone();
            for base in candidate_bases(&rs) {
                let Ok(m) = brauer_update(&base, &ones(n), &q, &reduced_head) else {
                    continue;
                };
                let positive = m.min_entry().map_or(false, |v| v > S::zero());
                if positive && eigen_basis(&m, s).is_ok() {
                    return Ok(m);
                }
            }
        }
    }
    Err(Error::PositiveRealizationNotFound(
        "no criterion yields a positive diagonalizable realization".into(),
    ))
}

/// The full universal-realizability pipeline: one positive diagonalizable
/// base realization, then one output matrix per admissible Jordan form.
pub fn universal_realizations<S: Scalar>(s: &Spectrum<S>) -> Result<Vec<UniversalRealization<S>>> {
    let base = positive_realization(s)?;
    let d = eigen_basis(&base, s)?;
    enumerate_jordan_forms(s)
        .into_iter()
        .map(|form| {
            let matrix = minc_realize(&base, &d, &form, None)?;
            Ok(UniversalRealization { form, matrix })
        })
        .collect()
}

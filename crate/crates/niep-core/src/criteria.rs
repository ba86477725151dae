//! Sufficient realizability criteria with explicit constructions.
//!
//! Each criterion comes as a checker plus a realizer which produces a
//! nonnegative matrix with the requested spectrum whenever the checker
//! accepts.  Every realizer is a composition of the rank-one/rank-r updates
//! from `perturb` applied to small seed blocks.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use num_complex::Complex;

use crate::diag3;
use crate::matrix::{ones, Matrix};
use crate::perturb::{brauer_update, rado_update, shift_perron, RadoUpdate};
use crate::scalar::{negligible, FieldElem, Scalar};
use crate::spectra::{negativity_upper_bound_with, Negativity, Spectrum};
use crate::{tol, Error, Result};

/// Tail regions for the complex criteria: real part dominant
/// (|Re| ≥ |Im|, Re ≤ 0) and the wider √3 wedge (√3|Re| ≥ |Im|, Re ≤ 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionTag {
    ReDominant,
    Sqrt3Wedge,
}

/// Output of the sign-pairing checker: p = number of nonnegative entries,
/// the set K of head indices whose mirror pair has negative sum, and the
/// reduced Perron value μ = λ₁ + Σ_{k∈K}(λ_k + λ_{n−k+2}).
#[derive(Clone, Debug, PartialEq)]
pub struct KelloggData<S: Scalar> {
    pub p: usize,
    pub k_set: Vec<usize>,
    pub mu: S,
}

/// A partition of the negative tail whose merged list passes the
/// sign-pairing checker.  `blocks` are the merged groups (each sorted
/// descending), `gamma` the merged list, `data` the checker output on it.
#[derive(Clone, Debug, PartialEq)]
pub struct BorobiaPartition<S: Scalar> {
    pub blocks: Vec<Vec<S>>,
    pub gamma: Vec<S>,
    pub data: KelloggData<S>,
}

/// Intermediates of the rank-3 pairing pipeline for 5-element lists:
/// the block-diagonal base, the 3×3 coupling target B with its diagonal,
/// and the update factors X, C producing the final matrix.
#[derive(Clone, Debug)]
pub struct RadoPipeline<S: Scalar> {
    pub base_blocks: Vec<Matrix<S>>,
    pub base: Matrix<S>,
    pub omega: Vec<S>,
    pub b: Matrix<S>,
    pub x: Matrix<S>,
    pub c: Matrix<S>,
    pub matrix: Matrix<S>,
}

/// Named criterion selector, used by the CLI and the auto dispatcher.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionKind {
    Suleimanova,
    Ciarlet,
    Salzmann,
    Kellogg,
    Borobia,
    RadoExample,
    Smigoc,
    Guo,
}

impl CriterionKind {
    pub fn name(&self) -> &'static str {
        match self {
            CriterionKind::Suleimanova => "suleimanova",
            CriterionKind::Ciarlet => "ciarlet",
            CriterionKind::Salzmann => "salzmann",
            CriterionKind::Kellogg => "kellogg",
            CriterionKind::Borobia => "borobia",
            CriterionKind::RadoExample => "rado-example",
            CriterionKind::Smigoc => "smigoc-wedge",
            CriterionKind::Guo => "guo",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "suleimanova" => CriterionKind::Suleimanova,
            "ciarlet" => CriterionKind::Ciarlet,
            "salzmann" => CriterionKind::Salzmann,
            "kellogg" => CriterionKind::Kellogg,
            "borobia" => CriterionKind::Borobia,
            "rado-example" => CriterionKind::RadoExample,
            "smigoc-wedge" => CriterionKind::Smigoc,
            "guo" => CriterionKind::Guo,
            _ => return None,
        })
    }

    pub const ALL: [CriterionKind; 8] = [
        CriterionKind::Suleimanova,
        CriterionKind::Ciarlet,
        CriterionKind::Salzmann,
        CriterionKind::Kellogg,
        CriterionKind::Borobia,
        CriterionKind::RadoExample,
        CriterionKind::Smigoc,
        CriterionKind::Guo,
    ];
}

/// Result of the auto dispatcher.  `perron_shift` is `Some(δ)` when only the
/// dominance-bound fallback applied and the matrix realizes the shifted list
/// {λ₁+δ, λ₂, …} instead of the input.
#[derive(Clone, Debug)]
pub struct AutoRealization<S: Scalar> {
    pub criterion: &'static str,
    pub matrix: Matrix<S>,
    pub perron_shift: Option<S>,
}

fn ge_slack<S: Scalar>(a: &S, b: &S, scale: f64) -> bool {
    if S::EXACT {
        a >= b
    } else {
        a.to_f64() + tol::COEFF * scale.max(1.0) >= b.to_f64()
    }
}

fn sum_of<S: Scalar>(vals: &[S]) -> S {
    vals.iter().fold(S::zero(), |acc, v| acc + v.clone())
}

fn scale_of<S: Scalar>(vals: &[S]) -> f64 {
    vals.iter().map(|v| v.to_f64().abs()).fold(1.0, f64::max)
}

// ---------------------------------------------------------------------------
// All-negative-tail criterion.
// ---------------------------------------------------------------------------

/// Accepts real lists whose tail is strictly negative and whose sum is
/// nonnegative.  Zeros in the tail are rejected (other criteria cover them).
pub fn check_suleimanova<S: Scalar>(s: &Spectrum<S>) -> bool {
    let Some(vals) = s.reals() else { return false };
    let sum = sum_of(&vals);
    vals[1..].iter().all(|v| v.is_negative()) && !sum.is_negative()
}

/// Realizes an accepted all-negative-tail list: seed B ∈ CS₀ with diagonal
/// (0, λ₂, …, λₙ) and first column (0, −λ₂, …, −λₙ), then one rank-one
/// update with q = (Σλ, −λ₂, …, −λₙ) which zeroes the diagonal.
pub fn realize_suleimanova<S: Scalar>(s: &Spectrum<S>) -> Result<Matrix<S>> {
    if !check_suleimanova(s) {
        return Err(Error::CriterionNotSatisfied(
            "tail not strictly negative or sum negative".into(),
        ));
    }
    let vals = s.reals().expect("checked real");
    let n = vals.len();
    let sum = sum_of(&vals);
    let mut b = Matrix::<S>::zeros(n, n);
    for j in 1..n {
        b[(j, 0)] = S::zero() - vals[j].clone();
        b[(j, j)] = vals[j].clone();
    }
    let b = b.tag_row_sum(S::zero())?;
    let mut q = vec![sum];
    for v in &vals[1..] {
        q.push(S::zero() - v.clone());
    }
    let a = brauer_update(&b, &ones(n), &q, &S::zero())?;
    debug_assert!(a.is_nonnegative());
    Ok(a)
}

// ---------------------------------------------------------------------------
// Uniform-modulus criterion.
// ---------------------------------------------------------------------------

/// Accepts real lists with n·|λ_k| ≤ λ₁ for every k ≥ 2.
pub fn check_ciarlet<S: Scalar>(s: &Spectrum<S>) -> bool {
    let Some(vals) = s.reals() else { return false };
    let n = S::from_int(vals.len() as i64);
    let scale = scale_of(&vals);
    vals[1..]
        .iter()
        .all(|v| ge_slack(&vals[0], &(n.clone() * v.abs()), scale * vals.len() as f64))
}

/// Same seed as `realize_suleimanova` but with the uniform update
/// q = (λ₁/n, …, λ₁/n), which covers positive tail entries too.
pub fn realize_ciarlet<S: Scalar>(s: &Spectrum<S>) -> Result<Matrix<S>> {
    if !check_ciarlet(s) {
        return Err(Error::CriterionNotSatisfied(
            "some tail modulus exceeds head/n".into(),
        ));
    }
    let vals = s.reals().expect("checked real");
    let n = vals.len();
    let mut b = Matrix::<S>::zeros(n, n);
    for j in 1..n {
        b[(j, 0)] = S::zero() - vals[j].clone();
        b[(j, j)] = vals[j].clone();
    }
    let b = b.tag_row_sum(S::zero())?;
    let share = vals[0].clone() / S::from_int(n as i64);
    let q = vec![share; n];
    let a = brauer_update(&b, &ones(n), &q, &S::zero())?;
    debug_assert!(a.is_nonnegative());
    Ok(a)
}

// ---------------------------------------------------------------------------
// Pair-sum criterion.
// ---------------------------------------------------------------------------

/// Accepts real lists with Σλ ≥ 0 and n·(λ_k + λ_{n−k+1}) ≤ 2·Σλ for
/// k = 2, …, ⌊(n+1)/2⌋.
pub fn check_salzmann<S: Scalar>(s: &Spectrum<S>) -> bool {
    let Some(vals) = s.reals() else { return false };
    let n = vals.len();
    let sum = sum_of(&vals);
    if sum.is_negative() {
        return false;
    }
    let scale = scale_of(&vals) * n as f64;
    let two_sum = (S::one() + S::one()) * sum;
    let nn = S::from_int(n as i64);
    for k in 2..=(n + 1) / 2 {
        let pair = vals[k - 1].clone() + vals[n - k].clone();
        if !ge_slack(&two_sum, &(nn.clone() * pair), scale) {
            return false;
        }
    }
    true
}

/// Trace-zero seed for the pair-sum realizer: mirror pairs (λ_k, λ_{n−k+1})
/// in 2×2 blocks, compensations in column 2, update q paying each block's
/// sum, for a trace-zero sorted list.
fn salzmann_trace_zero<S: Scalar>(vals: &[S]) -> Result<Matrix<S>> {
    let n = vals.len();
    if n == 1 {
        return Matrix::from_rows(vec![vec![vals[0].clone()]]).tag_row_sum(vals[0].clone());
    }
    let z = S::zero();
    let mut b = Matrix::<S>::zeros(n, n);
    let mut q = vec![z.clone(); n];
    // Slot pair (1, n): eigenvalues {0, λₙ}, the 0 becomes λ₁ after the update.
    let last = vals[n - 1].clone();
    b[(1, 0)] = z.clone() - last.clone();
    b[(1, 1)] = last.clone();
    q[1] = z.clone() - last;
    let mut col = 2;
    for k in 2..=n / 2 {
        let lk = vals[k - 1].clone();
        let lm = vals[n - k].clone();
        let sk = lk.clone() + lm.clone();
        b[(col, 1)] = z.clone() - lk.clone();
        b[(col + 1, 1)] = z.clone() - lk.clone();
        b[(col, col + 1)] = lk.clone();
        b[(col + 1, col)] = z.clone() - lm.clone();
        b[(col + 1, col + 1)] = sk.clone();
        q[col + 1] = z.clone() - sk;
        col += 2;
    }
    if n % 2 == 1 && n > 1 {
        let mid = vals[n / 2].clone();
        b[(col, 0)] = z.clone() - mid.clone();
        b[(col, col)] = mid.clone();
        q[col] = z - mid;
        col += 1;
    }
    assert_eq!(col, n);
    let b = b.tag_row_sum(S::zero())?;
    brauer_update(&b, &ones(n), &q, &S::zero())
}

/// Realizes an accepted pair-sum list by shifting every entry to the
/// trace-zero case, realizing that, and adding (Σλ/n)·I back.
pub fn realize_salzmann<S: Scalar>(s: &Spectrum<S>) -> Result<Matrix<S>> {
    if !check_salzmann(s) {
        return Err(Error::CriterionNotSatisfied(
            "a mirror pair exceeds twice the mean".into(),
        ));
    }
    let vals = s.reals().expect("checked real");
    let n = vals.len();
    let share = sum_of(&vals) / S::from_int(n as i64);
    let shifted: Vec<S> = vals.iter().map(|v| v.clone() - share.clone()).collect();
    let a0 = salzmann_trace_zero(&shifted)?;
    let mut a = a0.clone().drop_tags();
    for i in 0..n {
        a[(i, i)] = a[(i, i)].clone() + share.clone();
    }
    let a = a.tag_row_sum(vals[0].clone())?;
    debug_assert!(a.is_nonnegative());
    Ok(a)
}

// ---------------------------------------------------------------------------
// Sign-pairing criterion.
// ---------------------------------------------------------------------------

fn kellogg_on_values<S: Scalar>(vals: &[S]) -> Result<KelloggData<S>> {
    let n = vals.len();
    let scale = scale_of(vals) * n as f64;
    let p = vals.iter().filter(|v| !v.is_negative()).count();
    if p == 0 {
        return Err(Error::CriterionNotSatisfied("no nonnegative entry".into()));
    }
    let mut k_set = Vec::new();
    for i in 2..=(n + 1) / 2 {
        let head = vals[i - 1].clone();
        if head.is_negative() {
            continue;
        }
        let pair = head + vals[n - i + 1].clone();
        if pair.is_negative() && !negligible(&pair, tol::COEFF, scale) {
            k_set.push(i);
        }
    }
    // Pair inequalities: λ₁ + Σ_{i∈K, i<k} S_i + λ_{n−k+2} ≥ 0 for k ∈ K.
    let mut acc = S::zero();
    for &k in &k_set {
        let partner = vals[n - k + 1].clone();
        let need = S::zero() - acc.clone() - partner.clone();
        if !ge_slack(&vals[0], &need, scale) {
            return Err(Error::CriterionNotSatisfied(format!(
                "pair inequality at k={k} needs head {need}, have {}",
                vals[0]
            )));
        }
        acc = acc + vals[k - 1].clone() + partner;
    }
    // Residual-sum inequality when the middle run p+1..n−p+1 is nonempty.
    if n >= 2 * p {
        let mut run = S::zero();
        for j in (p + 1)..=(n - p + 1) {
            run = run + vals[j - 1].clone();
        }
        let need = S::zero() - acc.clone() - run;
        if !ge_slack(&vals[0], &need, scale) {
            return Err(Error::CriterionNotSatisfied(format!(
                "residual-sum inequality needs head {need}, have {}",
                vals[0]
            )));
        }
    }
    let mu = vals[0].clone() + acc;
    Ok(KelloggData { p, k_set, mu })
}

/// Sign-pairing checker: accepts or reports the first violated inequality.
pub fn check_kellogg<S: Scalar>(s: &Spectrum<S>) -> Result<KelloggData<S>> {
    let vals = s
        .reals()
        .ok_or_else(|| Error::CriterionNotSatisfied("list is not real".into()))?;
    kellogg_on_values(&vals)
}

/// A list element for the scaffold: either a plain value or a merged group
/// standing in for its sum (the group members are the realized values).
#[derive(Clone, Debug)]
enum Elem<S> {
    Single(S),
    Merged(Vec<S>),
}

impl<S: Scalar> Elem<S> {
    fn value(&self) -> S {
        match self {
            Elem::Single(v) => v.clone(),
            Elem::Merged(parts) => sum_of(parts),
        }
    }
    fn parts(&self) -> Vec<S> {
        match self {
            Elem::Single(v) => vec![v.clone()],
            Elem::Merged(parts) => parts.clone(),
        }
    }
}

/// Chain of borderings realizing {λ, μ₁, …, μ_r} (λ ≥ 0 > μ_j) in CS_λ with
/// every negative entry confined to the last column: row 0 carries λ at the
/// last column, row j carries e_{r+1−j}(−μ)/e_{r−j}(−μ) on the subdiagonal
/// and the balance at the last column.
pub fn expand_list<S: Scalar>(lambda_k: &S, mus: &[S]) -> Result<Matrix<S>> {
    if lambda_k.is_negative() {
        return Err(Error::BadSigns(format!("head {lambda_k} is negative")));
    }
    if mus.is_empty() || mus.iter().any(|m| !m.is_negative()) {
        return Err(Error::BadSigns("tail must be nonempty and negative".into()));
    }
    let r = mus.len();
    let nu: Vec<S> = mus.iter().map(|m| S::zero() - m.clone()).collect();
    let e = crate::spectra::elementary_symmetric(&nu);
    let mut b = Matrix::<S>::zeros(r + 1, r + 1);
    b[(0, r)] = lambda_k.clone();
    for j in 1..=r {
        let a_j = e[r + 1 - j].clone() / e[r - j].clone();
        b[(j, j - 1)] = a_j.clone();
        b[(j, r)] = lambda_k.clone() - a_j;
    }
    b.tag_row_sum(lambda_k.clone())
}

/// Shared scaffold for the sign-pairing realizers.  `elems` is the full
/// sorted list (head first); merged groups may appear only among negatives.
fn scaffold_realize<S: Scalar>(elems: &[Elem<S>]) -> Result<Matrix<S>> {
    let vals: Vec<S> = elems.iter().map(|e| e.value()).collect();
    let data = kellogg_on_values(&vals)?;
    let n = vals.len();
    let (p, k_set, mu) = (data.p, data.k_set.clone(), data.mu.clone());

    // Reduced all-negative-tail list: μ plus the middle-run members.
    let mut su_tail: Vec<Complex<S>> = vec![crate::scalar::complexify(&mu)];
    if n >= 2 * p {
        for j in (p + 1)..=(n - p + 1) {
            for part in elems[j - 1].parts() {
                su_tail.push(crate::scalar::complexify(&part));
            }
        }
    }
    let b1 = if su_tail.len() == 1 {
        Matrix::from_rows(vec![vec![mu.clone()]]).tag_row_sum(mu.clone())?
    } else {
        let sub = Spectrum::normalize(&su_tail)?;
        realize_suleimanova(&sub)?
    };

    // Assemble the block-diagonal scaffold: b1 then the K blocks, largest
    // index first.  Record each section's column range.
    let mut blocks: Vec<Matrix<S>> = vec![b1];
    for &k in k_set.iter().rev() {
        let head = vals[k - 1].clone();
        let parts = elems[n - k + 1].parts();
        blocks.push(expand_list(&head, &parts)?);
    }
    let total: usize = blocks.iter().map(|b| b.order()).sum();
    let mut b = Matrix::<S>::zeros(total, total);
    let mut starts = Vec::with_capacity(blocks.len());
    let mut at = 0usize;
    for blk in &blocks {
        starts.push(at);
        b.set_block(at, at, blk);
        at += blk.order();
    }
    let ends: Vec<usize> = starts
        .iter()
        .zip(&blocks)
        .map(|(s, blk)| s + blk.order() - 1)
        .collect();

    // Fills and the update vector.  K blocks sit at scaffold positions
    // 1..=t in reverse index order: position of k_i (ascending i) is t−i+1.
    let t = k_set.len();
    let mut q = vec![S::zero(); total];
    let s_of = |k: usize| -> S { vals[k - 1].clone() + vals[n - k + 1].clone() };
    for (i, &k) in k_set.iter().enumerate() {
        let pos = t - i; // scaffold block index of k (1-based after b1)
        let rows = starts[pos]..=ends[pos];
        if i == t - 1 {
            // largest k: compensate out of the reduced block's last column
            let fill = mu.clone() - vals[k - 1].clone();
            for r in rows {
                b[(r, ends[0])] = b[(r, ends[0])].clone() + fill.clone();
            }
        } else {
            // earlier k: compensation at the largest block's last column,
            // routed through the intermediate blocks' last columns
            let mut fill = mu.clone() - vals[k - 1].clone();
            for &kj in &k_set[i + 1..t - 1] {
                fill = fill - s_of(kj);
                let pos_j = t - k_set.iter().position(|&x| x == kj).unwrap();
                for r in rows.clone() {
                    b[(r, ends[pos_j])] = b[(r, ends[pos_j])].clone() + s_of(kj);
                }
            }
            for r in rows {
                b[(r, ends[1])] = b[(r, ends[1])].clone() + fill.clone();
            }
        }
        q[ends[pos]] = S::zero() - s_of(k);
    }
    let b = b.tag_row_sum(mu.clone())?;
    let m = brauer_update(&b, &ones(total), &q, &mu)?;

    // Residual direct summands: untouched mirror pairs and, for even n,
    // the self-paired middle element when nonnegative.
    let mut a = m;
    for i in 2..=(n + 1) / 2 {
        if k_set.contains(&i) || vals[i - 1].is_negative() {
            continue;
        }
        let partner = n - i + 2;
        if !vals[partner - 1].is_negative() {
            let d = Matrix::diagonal(&[vals[i - 1].clone(), vals[partner - 1].clone()]);
            a = a.drop_tags().direct_sum(&d);
        } else {
            let blk = expand_list(&vals[i - 1], &elems[partner - 1].parts())?;
            if !blk.is_nonnegative() {
                return Err(Error::InternalConstructionError(
                    "residual pair block has a negative entry".into(),
                ));
            }
            a = a.drop_tags().direct_sum(&blk);
        }
    }
    if n % 2 == 0 && !vals[n / 2].is_negative() {
        let d = Matrix::from_rows(vec![vec![vals[n / 2].clone()]]);
        a = a.drop_tags().direct_sum(&d);
    }
    if !a.is_nonnegative() {
        return Err(Error::InternalConstructionError(
            "scaffold produced a negative entry".into(),
        ));
    }
    Ok(a)
}

/// Realizes a sign-pairing-accepted list via the block scaffold.
pub fn realize_kellogg<S: Scalar>(s: &Spectrum<S>, data: &KelloggData<S>) -> Result<Matrix<S>> {
    let vals = s
        .reals()
        .ok_or_else(|| Error::CriterionNotSatisfied("list is not real".into()))?;
    let elems: Vec<Elem<S>> = vals.iter().map(|v| Elem::Single(v.clone())).collect();
    let a = scaffold_realize(&elems)?;
    let check = kellogg_on_values(&vals)?;
    if check != *data {
        return Err(Error::InternalConstructionError(
            "checker data does not match the input list".into(),
        ));
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Partitioned sign-pairing criterion.
// ---------------------------------------------------------------------------

const BOROBIA_TAIL_CAP: usize = 12;

fn gamma_elems<S: Scalar>(positives: &[S], blocks: &[Vec<S>]) -> Vec<Elem<S>> {
    let mut tail: Vec<Elem<S>> = blocks
        .iter()
        .map(|b| {
            if b.len() == 1 {
                Elem::Single(b[0].clone())
            } else {
                Elem::Merged(b.clone())
            }
        })
        .collect();
    tail.sort_by(|a, b| {
        b.value()
            .partial_cmp(&a.value())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut elems: Vec<Elem<S>> = positives.iter().map(|v| Elem::Single(v.clone())).collect();
    elems.extend(tail);
    elems
}

fn canonical_key<S: Scalar>(blocks: &[Vec<S>]) -> String {
    let mut keys: Vec<String> = blocks
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            inner.join(",")
        })
        .collect();
    keys.sort();
    keys.join(";")
}

/// Searches the set partitions of the negative tail, fewest groups first,
/// for one whose merged list passes the sign-pairing checker.
pub fn find_borobia_partition<S: Scalar>(s: &Spectrum<S>) -> Result<BorobiaPartition<S>> {
    let vals = s
        .reals()
        .ok_or_else(|| Error::CriterionNotSatisfied("list is not real".into()))?;
    let p = vals.iter().filter(|v| !v.is_negative()).count();
    let tail: Vec<S> = vals[p..].to_vec();
    let j = tail.len();
    if j > BOROBIA_TAIL_CAP {
        return Err(Error::TailTooLarge(format!(
            "negative tail has {j} entries, cap is {BOROBIA_TAIL_CAP}"
        )));
    }
    let positives = &vals[..p];
    if j == 0 {
        let data = kellogg_on_values(&vals)?;
        return Ok(BorobiaPartition {
            blocks: Vec::new(),
            gamma: vals,
            data,
        });
    }

    let mut seen = BTreeSet::new();
    for count in 1..=j {
        let mut assignment = vec![0usize; j];
        let mut found: Option<BorobiaPartition<S>> = None;
        enumerate_partitions(&tail, &mut assignment, 0, 0, count, &mut |blocks| {
            if found.is_some() {
                return;
            }
            let key = canonical_key(blocks);
            if !seen.insert(key) {
                return;
            }
            let elems = gamma_elems(positives, blocks);
            let gamma: Vec<S> = elems.iter().map(|e| e.value()).collect();
            if let Ok(data) = kellogg_on_values(&gamma) {
                found = Some(BorobiaPartition {
                    blocks: blocks.to_vec(),
                    gamma,
                    data,
                });
            }
        });
        if let Some(part) = found {
            return Ok(part);
        }
    }
    Err(Error::NoPartitionFound(
        "no tail partition passes the sign-pairing checker".into(),
    ))
}

/// Restricted-growth enumeration of partitions of `items` into exactly
/// `count` unlabeled groups.
fn enumerate_partitions<S: Scalar>(
    items: &[S],
    assignment: &mut Vec<usize>,
    idx: usize,
    used: usize,
    count: usize,
    visit: &mut impl FnMut(&[Vec<S>]),
) {
    let n = items.len();
    if idx == n {
        if used == count {
            let mut blocks: Vec<Vec<S>> = vec![Vec::new(); count];
            for (i, &g) in assignment.iter().enumerate() {
                blocks[g].push(items[i].clone());
            }
            for b in &mut blocks {
                b.sort_by(|a, c| c.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
            }
            visit(&blocks);
        }
        return;
    }
    // Prune: remaining items must be able to open the missing groups.
    if count - used > n - idx {
        return;
    }
    let cap = (used + 1).min(count);
    for g in 0..cap {
        assignment[idx] = g;
        let next_used = if g == used { used + 1 } else { used };
        enumerate_partitions(items, assignment, idx + 1, next_used, count, visit);
    }
}

/// Realizes a list through an accepted tail partition: the scaffold runs on
/// the merged list with each merged group expanded in place.
pub fn realize_borobia<S: Scalar>(
    s: &Spectrum<S>,
    part: &BorobiaPartition<S>,
) -> Result<Matrix<S>> {
    let vals = s
        .reals()
        .ok_or_else(|| Error::CriterionNotSatisfied("list is not real".into()))?;
    let p = vals.iter().filter(|v| !v.is_negative()).count();
    if part.blocks.is_empty() {
        return realize_kellogg(s, &part.data);
    }
    let elems = gamma_elems(&vals[..p], &part.blocks);
    scaffold_realize(&elems)
}

// ---------------------------------------------------------------------------
// Complex-region criterion.
// ---------------------------------------------------------------------------

fn in_region<S: Scalar>(z: &Complex<S>, tag: RegionTag, scale: f64) -> bool {
    let re = &z.re;
    let im = &z.im;
    if re.is_negative() || re.is_zero() || negligible(re, tol::COEFF, scale) {
        let re2 = re.clone() * re.clone();
        let im2 = im.clone() * im.clone();
        let bound = match tag {
            RegionTag::ReDominant => re2,
            RegionTag::Sqrt3Wedge => S::from_int(3) * re2,
        };
        ge_slack(&bound, &im2, scale * scale)
    } else {
        false
    }
}

/// Membership of the whole tail in the requested region together with the
/// nonnegative-sum condition (which is exact for these regions).
pub fn check_complex_region<S: Scalar>(s: &Spectrum<S>, tag: RegionTag) -> bool {
    let scale = s.values.iter().map(|z| z.norm1()).fold(1.0, f64::max);
    s.tail().iter().all(|z| in_region(z, tag, scale)) && !s.real_sum().is_negative()
}

fn wedge_base2<S: Scalar>(l1: &S, l2: &S) -> Result<Matrix<S>> {
    let half = S::one().half();
    let a = (l1.clone() + l2.clone()) * half.clone();
    let b = (l1.clone() - l2.clone()) * half;
    Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, a]])
        .tag_row_sum(l1.clone())
}

/// Recursive realizer for wedge lists: peel the two most negative reals (or
/// the most negative conjugate pair), realize the reduced list, and couple
/// it back through a 3×3 block with diagonal (reduced head, 0, 0).
pub fn realize_complex_smigoc<S: Scalar>(s: &Spectrum<S>) -> Result<Matrix<S>> {
    let scale = s.values.iter().map(|z| z.norm1()).fold(1.0, f64::max);
    if !s.tail().iter().all(|z| in_region(z, RegionTag::Sqrt3Wedge, scale)) {
        return Err(Error::RegionViolated(
            "a tail value lies outside the wedge".into(),
        ));
    }
    if s.real_sum().is_negative() {
        return Err(Error::CriterionNotSatisfied("sum is negative".into()));
    }
    realize_wedge_recursive(&s.values)
}

fn realize_wedge_recursive<S: Scalar>(values: &[Complex<S>]) -> Result<Matrix<S>> {
    let n = values.len();
    let l1 = values[0].re.clone();
    match n {
        1 => Matrix::from_rows(vec![vec![l1.clone()]]).tag_row_sum(l1),
        2 => wedge_base2(&l1, &values[1].re),
        3 => {
            let total = l1.clone() + values[1].re.clone() + values[2].re.clone();
            let omega = [total, S::zero(), S::zero()];
            let lam = [values[0].clone(), values[1].clone(), values[2].clone()];
            diag3::construct_3x3(&omega, &lam)
        }
        _ => {
            // Peel two reals (most negative) if available, else the most
            // negative conjugate pair; both keep the remainder closed.
            let scale = values.iter().map(|z| z.norm1()).fold(1.0, f64::max);
            let mut real_idx: Vec<usize> =
                (1..n).filter(|&i| values[i].im.is_zero()).collect();
            real_idx.sort_by(|&a, &b| {
                values[a]
                    .re
                    .partial_cmp(&values[b].re)
                    .unwrap_or(core::cmp::Ordering::Equal)
            });
            let (i, j) = if real_idx.len() >= 2 {
                (real_idx[0], real_idx[1])
            } else {
                let mut pair_first: Vec<usize> = (1..n)
                    .filter(|&i| !values[i].im.is_negative() && !values[i].im.is_zero())
                    .collect();
                pair_first.sort_by(|&a, &b| {
                    values[a]
                        .re
                        .partial_cmp(&values[b].re)
                        .unwrap_or(core::cmp::Ordering::Equal)
                });
                let a = *pair_first.first().ok_or_else(|| {
                    Error::InternalConstructionError("no peelable pair".into())
                })?;
                let b = (1..n)
                    .find(|&k| {
                        let dre = values[k].re.clone() - values[a].re.clone();
                        let dim = values[k].im.clone() + values[a].im.clone();
                        k != a
                            && negligible(&dre, tol::COEFF, scale)
                            && negligible(&dim, tol::COEFF, scale)
                    })
                    .ok_or_else(|| {
                        Error::InternalConstructionError("conjugate partner missing".into())
                    })?;
                (a, b)
            };
            let li = values[i].clone();
            let lj = values[j].clone();
            let reduced_head = l1.clone() + li.re.clone() + lj.re.clone();
            let mut reduced: Vec<Complex<S>> =
                vec![Complex::new(reduced_head.clone(), S::zero())];
            for (k, v) in values.iter().enumerate() {
                if k != 0 && k != i && k != j {
                    reduced.push(v.clone());
                }
            }
            let a2 = realize_wedge_recursive(&reduced)?;
            let m = a2.order() + 2;
            let base = a2
                .drop_tags()
                .direct_sum(&Matrix::zeros(1, 1))
                .direct_sum(&Matrix::zeros(1, 1));
            let omega3 = [reduced_head.clone(), S::zero(), S::zero()];
            let lam3 = [values[0].clone(), li, lj];
            let b3 = diag3::construct_3x3(&omega3, &lam3).map_err(|e| {
                Error::InternalConstructionError(format!(
                    "coupling block construction failed: {e}"
                ))
            })?;
            let mut x = Matrix::<S>::zeros(m, 3);
            for r in 0..m - 2 {
                x[(r, 0)] = S::one();
            }
            x[(m - 2, 1)] = S::one();
            x[(m - 1, 2)] = S::one();
            // CX must equal B − Ω; Ω = diag(reduced head, 0, 0) and the
            // (0,0) entry of B is exactly the reduced head, so column 0 of
            // C vanishes in row 0.
            let mut c = Matrix::<S>::zeros(3, m);
            for r in 0..3 {
                c[(r, 0)] = b3[(r, 0)].clone()
                    - if r == 0 { omega3[0].clone() } else { S::zero() };
                c[(r, m - 2)] = b3[(r, 1)].clone();
                c[(r, m - 1)] = b3[(r, 2)].clone();
            }
            let upd = RadoUpdate {
                x,
                c,
                omega: vec![reduced_head, S::zero(), S::zero()],
            };
            let out = rado_update(&base, &upd)?;
            out.tag_row_sum(l1)
        }
    }
}

// ---------------------------------------------------------------------------
// Dominance-bound realizer.
// ---------------------------------------------------------------------------

fn max_modulus_sq<S: Scalar>(tail: &[Complex<S>]) -> S {
    let mut m = S::zero();
    for z in tail {
        let q = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
        if q > m {
            m = q;
        }
    }
    m
}

/// Head value (n−1)·m for a given tail, with m = max tail modulus, plus a
/// nonnegative matrix realizing {(n−1)m, tail}.  A zero tail yields the zero
/// matrix.  Exact mode requires m to be rational; a tail with no real entry
/// is not supported by this pattern.
pub fn guo_bound_realize<S: Scalar>(tail: &[Complex<S>]) -> Result<(S, Matrix<S>)> {
    if tail.is_empty() {
        return Err(Error::EmptyInput("tail must be nonempty".into()));
    }
    let scale = tail.iter().map(|z| z.norm1()).fold(1.0, f64::max);
    if !crate::spectra::conjugate_closed(tail, tol::COEFF) {
        return Err(Error::NotConjugateClosed("tail is not closed".into()));
    }
    let n = tail.len() + 1;
    let msq = max_modulus_sq(tail);
    if msq.is_zero() {
        return Ok((S::zero(), Matrix::zeros(n, n)));
    }
    let m = match msq.sqrt_exact() {
        Some(v) => v,
        None => {
            return Err(Error::ExactSqrtUnavailable(
                "max tail modulus is irrational".into(),
            ))
        }
    };

    // Canonical order: reals descending, then conjugate pairs by descending
    // real part, positive imaginary first.
    let mut reals: Vec<S> = tail
        .iter()
        .filter(|z| negligible(&z.im, tol::COEFF, scale))
        .map(|z| z.re.clone())
        .collect();
    reals.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    let mut pairs: Vec<(S, S)> = tail
        .iter()
        .filter(|z| !negligible(&z.im, tol::COEFF, scale) && !z.im.is_negative())
        .map(|z| (z.re.clone(), z.im.clone()))
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));
    if reals.is_empty() && !pairs.is_empty() {
        return Err(Error::UnsupportedTail(
            "tail needs at least one real entry beside conjugate pairs".into(),
        ));
    }

    let unit = m.clone() * S::from_int(n as i64 - 1);
    let mu_reals: Vec<S> = reals.iter().map(|v| v.clone() / unit.clone()).collect();
    let mu_pairs: Vec<(S, S)> = pairs
        .iter()
        .map(|(a, b)| (a.clone() / unit.clone(), b.clone() / unit.clone()))
        .collect();

    let any_late_positive = mu_reals[1..].iter().any(|v| !v.is_negative() && !v.is_zero())
        || mu_pairs.iter().any(|(a, _)| !a.is_negative() && !a.is_zero());
    let first_positive =
        !mu_reals.is_empty() && !mu_reals[0].is_negative() && !mu_reals[0].is_zero();

    let z = S::zero();
    let mut b = Matrix::<S>::zeros(n, n);
    let rearranged = first_positive && !any_late_positive && n > 2;
    // Row 1 is zero.  Real rows: compensation column then diagonal.  Pair
    // rows: rotation block on the diagonal, compensations in the first two
    // columns.  The rearranged variant swaps the two compensation columns
    // so the update vector can skip position 2.
    let comp_col = if rearranged { 1 } else { 0 };
    let alt_col = if rearranged { 0 } else { 1 };
    let mut row = 1usize;
    for (idx, muv) in mu_reals.iter().enumerate() {
        if rearranged && idx == 0 {
            b[(row, 0)] = z.clone() - muv.clone();
        } else {
            b[(row, comp_col)] = z.clone() - muv.clone();
        }
        b[(row, row)] = b[(row, row)].clone() + muv.clone();
        row += 1;
    }
    for (a, bb) in &mu_pairs {
        b[(row, comp_col)] = b[(row, comp_col)].clone() - a.clone();
        b[(row + 1, comp_col)] = b[(row + 1, comp_col)].clone() - a.clone();
        b[(row, alt_col)] = b[(row, alt_col)].clone() + bb.clone();
        b[(row + 1, alt_col)] = b[(row + 1, alt_col)].clone() - bb.clone();
        b[(row, row)] = b[(row, row)].clone() + a.clone();
        b[(row, row + 1)] = b[(row, row + 1)].clone() - bb.clone();
        b[(row + 1, row)] = b[(row + 1, row)].clone() + bb.clone();
        b[(row + 1, row + 1)] = b[(row + 1, row + 1)].clone() + a.clone();
        row += 2;
    }
    assert_eq!(row, n);

    let share = S::one() / S::from_int(n as i64 - 1);
    let mut q = vec![share.clone(); n];
    if rearranged {
        q[1] = z.clone();
    } else if any_late_positive {
        // Zero the update at the first positive diagonal position (the
        // first column of its rotation block when complex).
        let mut pos = 1 + mu_reals.len();
        let mut target = mu_reals
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, v)| !v.is_negative() && !v.is_zero())
            .map(|(i, _)| 1 + i);
        if target.is_none() {
            for (a, _) in &mu_pairs {
                if !a.is_negative() && !a.is_zero() {
                    target = Some(pos);
                    break;
                }
                pos += 2;
            }
        }
        q[target.expect("a positive entry exists")] = z.clone();
    } else if first_positive {
        // Only reachable at n = 2: the single tail entry is positive and
        // sits on the diagonal of row 1, so the update skips column 1.
        q[1] = z.clone();
    } else {
        q[0] = z.clone();
    }

    let b = b.tag_row_sum(S::zero())?;
    let a0 = brauer_update(&b, &ones(n), &q, &S::zero())?;
    let a = a0.scale(&unit).tag_row_sum(unit.clone())?;
    if !a.is_nonnegative() {
        return Err(Error::InternalConstructionError(
            "dominance-bound matrix has a negative entry".into(),
        ));
    }
    Ok((unit, a))
}

// ---------------------------------------------------------------------------
// Rank-3 pairing pipeline for 5-element lists.
// ---------------------------------------------------------------------------

/// Applicability of the rank-3 pairing pipeline: a real 5-element list with
/// strictly negative last two entries, nonnegative sum, and the 3×3 coupling
/// conditions for diagonal (−λ₄, −λ₅, Σλ) against (λ₁, λ₂, λ₃).
pub fn check_rado_example<S: Scalar>(s: &Spectrum<S>) -> bool {
    rado_example_data(s).is_some()
}

fn rado_example_data<S: Scalar>(s: &Spectrum<S>) -> Option<([S; 3], [Complex<S>; 3])> {
    let vals = s.reals()?;
    if vals.len() != 5 {
        return None;
    }
    if !vals[3].is_negative() || !vals[4].is_negative() {
        return None;
    }
    let total = sum_of(&vals);
    if total.is_negative() {
        return None;
    }
    let omega = [
        S::zero() - vals[3].clone(),
        S::zero() - vals[4].clone(),
        total,
    ];
    let lam = [
        crate::scalar::complexify(&vals[0]),
        crate::scalar::complexify(&vals[1]),
        crate::scalar::complexify(&vals[2]),
    ];
    match diag3::check_perfect_conditions(&omega, &lam) {
        Ok(true) => Some((omega, lam)),
        _ => None,
    }
}

/// Runs the rank-3 pairing pipeline, exposing every intermediate: the three
/// seed blocks, their direct sum, the 3×3 coupling target, and the update
/// factors.
pub fn rado_example_pipeline<S: Scalar>(s: &Spectrum<S>) -> Result<RadoPipeline<S>> {
    let (omega, lam) = rado_example_data(s).ok_or_else(|| {
        Error::CriterionNotSatisfied(
            "list is not a 5-element pairing-pipeline candidate".into(),
        )
    })?;
    let b = diag3::construct_3x3(&omega, &lam)?;
    // ω₁, ω₂ are strictly positive here; each 2×2 block realizes {ωᵢ, −ωᵢ}
    // and the 1×1 block realizes {ω₃}.
    let blk = |w: &S| -> Matrix<S> {
        Matrix::from_rows(vec![
            vec![S::zero(), w.clone()],
            vec![w.clone(), S::zero()],
        ])
    };
    let b1 = blk(&omega[0]);
    let b2 = blk(&omega[1]);
    let b3 = Matrix::from_rows(vec![vec![omega[2].clone()]]);
    let base = b1.direct_sum(&b2).direct_sum(&b3);
    let nn = base.order();
    let sizes = [b1.order(), b2.order(), b3.order()];
    let mut x = Matrix::<S>::zeros(nn, 3);
    let mut first_col = [0usize; 3];
    let mut at = 0;
    for (j, sz) in sizes.iter().enumerate() {
        first_col[j] = at;
        for r in at..at + sz {
            x[(r, j)] = S::one();
        }
        at += sz;
    }
    let mut c = Matrix::<S>::zeros(3, nn);
    for i in 0..3 {
        for j in 0..3 {
            let off_diag = b[(i, j)].clone() - if i == j { omega[i].clone() } else { S::zero() };
            c[(i, first_col[j])] = off_diag;
        }
    }
    let m = rado_update(
        &base,
        &RadoUpdate {
            x: x.clone(),
            c: c.clone(),
            omega: omega.to_vec(),
        },
    )?;
    let m = m.tag_row_sum(s.perron())?;
    Ok(RadoPipeline {
        base_blocks: vec![b1, b2, b3],
        base,
        omega: omega.to_vec(),
        b,
        x,
        c,
        matrix: m,
    })
}

pub fn realize_rado_example<S: Scalar>(s: &Spectrum<S>) -> Result<Matrix<S>> {
    Ok(rado_example_pipeline(s)?.matrix)
}

/// Monotone feasibility of the pairing pipeline at any head value ≤ `lam1`
/// (a feasible smaller head extends to `lam1` by a Perron shift).  The
/// coupling inequality is linear in the head, so this is an exact interval
/// intersection.
fn rado_example_feasible_below<S: Scalar>(tail: &[S], lam1: &S) -> bool {
    if tail.len() != 4 {
        return false;
    }
    let (l2, l3, l4, l5) = (
        tail[0].clone(),
        tail[1].clone(),
        tail[2].clone(),
        tail[3].clone(),
    );
    if !l4.is_negative() || !l5.is_negative() {
        return false;
    }
    let t = l2.clone() + l3.clone() + l4.clone() + l5.clone();
    if t > S::zero() {
        return false; // ω₃ = x + T must stay ≤ x
    }
    let w1 = S::zero() - l4;
    let w2 = S::zero() - l5;
    // Lower bounds for the head x.
    let mut lo = l2.clone();
    for cand in [w1.clone(), w2.clone(), S::zero() - t.clone()] {
        if cand > lo {
            lo = cand;
        }
    }
    let wmax = if w1 > w2 { w1.clone() } else { w2.clone() };
    if wmax < l2 {
        // Region condition needs ω₃ = x + T ≥ λ₂.
        let need = l2.clone() - t.clone();
        if need > lo {
            lo = need;
        }
    }
    if lo > *lam1 {
        return false;
    }
    // Coupling inequality g(x) = e₂(ω) − e₂(λ₁..λ₃) ≥ 0, linear in x.
    let slope = w1.clone() + w2.clone() - l2.clone() - l3.clone();
    let inter = w1.clone() * w2.clone() + (w1 + w2) * t.clone() - l2 * l3;
    let g = |x: &S| slope.clone() * x.clone() + inter.clone();
    if slope.is_negative() {
        !g(&lo).is_negative()
    } else {
        !g(lam1).is_negative()
    }
}

// ---------------------------------------------------------------------------
// Auto dispatch, certification, and the shift bound.
// ---------------------------------------------------------------------------

/// Evaluates every checker on the list; used by the CLI's `check` command.
pub fn check_catalog<S: Scalar>(s: &Spectrum<S>) -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();
    out.push(("suleimanova", check_suleimanova(s)));
    out.push(("ciarlet", check_ciarlet(s)));
    out.push(("salzmann", check_salzmann(s)));
    out.push(("kellogg", check_kellogg(s).is_ok()));
    out.push(("borobia", find_borobia_partition(s).is_ok()));
    out.push(("rado-example", check_rado_example(s)));
    out.push((
        "region-re-dominant",
        check_complex_region(s, RegionTag::ReDominant),
    ));
    out.push((
        "smigoc-wedge",
        check_complex_region(s, RegionTag::Sqrt3Wedge),
    ));
    out.push(("guo", guo_dominated(s)));
    out
}

/// Whether λ₁ ≥ (n−1)·(max tail modulus), compared through squares so no
/// root extraction is needed.
pub fn guo_dominated<S: Scalar>(s: &Spectrum<S>) -> bool {
    let n = s.order();
    if n == 1 {
        return true;
    }
    let msq = max_modulus_sq(s.tail());
    let l1 = s.perron();
    let lhs = l1.clone() * l1;
    let factor = S::from_int((n as i64 - 1) * (n as i64 - 1));
    let scale = s.values.iter().map(|z| z.norm1()).fold(1.0, f64::max);
    ge_slack(&lhs, &(factor * msq), scale * scale * n as f64 * n as f64)
}

/// Realizes the list as {(n−1)m, tail} via the dominance bound and shifts
/// the head up to λ₁; rejects when λ₁ sits below the bound.
pub fn realize_guo<S: Scalar>(s: &Spectrum<S>) -> Result<Matrix<S>> {
    if s.order() == 1 {
        return Matrix::from_rows(vec![vec![s.perron()]]).tag_row_sum(s.perron());
    }
    if !guo_dominated(s) {
        return Err(Error::CriterionNotSatisfied(
            "head is below the dominance bound".into(),
        ));
    }
    let (bound, a) = guo_bound_realize(s.tail())?;
    let delta = s.perron() - bound;
    shift_perron(&a, &delta)
}

/// Realizer dispatch by criterion kind.
pub fn realize_by<S: Scalar>(kind: CriterionKind, s: &Spectrum<S>) -> Result<Matrix<S>> {
    match kind {
        CriterionKind::Suleimanova => realize_suleimanova(s),
        CriterionKind::Ciarlet => realize_ciarlet(s),
        CriterionKind::Salzmann => realize_salzmann(s),
        CriterionKind::Kellogg => {
            let data = check_kellogg(s)?;
            realize_kellogg(s, &data)
        }
        CriterionKind::Borobia => {
            let part = find_borobia_partition(s)?;
            realize_borobia(s, &part)
        }
        CriterionKind::RadoExample => realize_rado_example(s),
        CriterionKind::Smigoc => realize_complex_smigoc(s),
        CriterionKind::Guo => realize_guo(s),
    }
}

/// Tries criteria cheapest-first; falls back to the dominance bound, which
/// realizes a Perron-shifted list when λ₁ is below the bound.
pub fn realize_auto<S: Scalar>(s: &Spectrum<S>) -> Result<AutoRealization<S>> {
    let chain = [
        CriterionKind::Suleimanova,
        CriterionKind::Ciarlet,
        CriterionKind::Salzmann,
        CriterionKind::Kellogg,
        CriterionKind::Borobia,
        CriterionKind::RadoExample,
        CriterionKind::Smigoc,
    ];
    for kind in chain {
        match realize_by(kind, s) {
            Ok(matrix) => {
                return Ok(AutoRealization {
                    criterion: kind.name(),
                    matrix,
                    perron_shift: None,
                })
            }
            Err(Error::InternalConstructionError(m)) => {
                return Err(Error::InternalConstructionError(m))
            }
            Err(_) => {}
        }
    }
    if guo_dominated(s) {
        if let Ok(matrix) = realize_guo(s) {
            return Ok(AutoRealization {
                criterion: "guo",
                matrix,
                perron_shift: None,
            });
        }
    }
    match guo_bound_realize(s.tail()) {
        Ok((bound, matrix)) => {
            let shift = bound - s.perron();
            Ok(AutoRealization {
                criterion: "guo",
                matrix,
                perron_shift: Some(shift),
            })
        }
        Err(_) => Err(Error::CriterionNotSatisfied(
            "no implemented criterion applies".into(),
        )),
    }
}

/// First accepting criterion name for a shifted list; the accepted set is
/// upward closed in the head value, as required by the bound search.
pub fn certify_shift<S: Scalar>(s: &Spectrum<S>) -> Option<String> {
    if check_suleimanova(s) {
        return Some("suleimanova".into());
    }
    if check_ciarlet(s) {
        return Some("ciarlet".into());
    }
    if check_salzmann(s) {
        return Some("salzmann".into());
    }
    if check_kellogg(s).is_ok() {
        return Some("kellogg".into());
    }
    if find_borobia_partition(s).is_ok() {
        return Some("borobia".into());
    }
    if let Some(vals) = s.reals() {
        if vals.len() == 5 && rado_example_feasible_below(&vals[1..], &vals[0]) {
            return Some("rado-example".into());
        }
    }
    if check_complex_region(s, RegionTag::Sqrt3Wedge) {
        return Some("smigoc-wedge".into());
    }
    if guo_dominated(s) {
        return Some("guo".into());
    }
    None
}

/// Least certified head shift on the default grid.
pub fn negativity_upper_bound<S: Scalar>(s: &Spectrum<S>) -> Result<Negativity<S>> {
    negativity_upper_bound_with(s, certify_shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_real_spectrum, verify_spectrum};
    use num_rational::BigRational;

    fn rat(p: i64) -> BigRational {
        <BigRational as Scalar>::from_int(p)
    }

    fn spec(vals: &[i64]) -> Spectrum<BigRational> {
        let v: Vec<BigRational> = vals.iter().map(|&x| rat(x)).collect();
        Spectrum::from_reals(&v).unwrap()
    }

    fn check_realized(m: &Matrix<BigRational>, vals: &[i64]) {
        let v: Vec<BigRational> = vals.iter().map(|&x| rat(x)).collect();
        let report = verify_real_spectrum(m, &v);
        assert!(report.pass(), "spectrum mismatch for {vals:?}: {report:?}");
        assert!(m.is_nonnegative(), "negative entry for {vals:?}");
    }

    #[test]
    fn suleimanova_examples() {
        assert!(check_suleimanova(&spec(&[3, -1, -1, -1])));
        assert!(!check_suleimanova(&spec(&[0, 0])));
        assert!(!check_suleimanova(&spec(&[2, -1, -2])));

        let m = realize_suleimanova(&spec(&[5, -5])).unwrap();
        assert_eq!(m.row(0), vec![rat(0), rat(5)]);
        assert_eq!(m.row(1), vec![rat(5), rat(0)]);

        check_realized(&realize_suleimanova(&spec(&[3, -1, -1, -1])).unwrap(), &[3, -1, -1, -1]);
        check_realized(&realize_suleimanova(&spec(&[5, -1, -2, -2])).unwrap(), &[5, -1, -2, -2]);
    }

    #[test]
    fn ciarlet_examples() {
        assert!(check_ciarlet(&spec(&[5, 1, -1, -1, -1])));
        assert!(!check_ciarlet(&spec(&[4, 1, -1, -1, -1])));
        let m = realize_ciarlet(&spec(&[5, 1, -1, -1, -1])).unwrap();
        check_realized(&m, &[5, 1, -1, -1, -1]);
        assert_eq!(m.row_sum_tag(), Some(&rat(5)));
        // boundary |λ_k| = λ₁/n
        let s = spec(&[8, 2, 2, 2]);
        assert!(check_ciarlet(&s));
        check_realized(&realize_ciarlet(&s).unwrap(), &[8, 2, 2, 2]);
    }

    #[test]
    fn salzmann_examples() {
        assert!(check_salzmann(&spec(&[2, 0, -1, -1])));
        assert!(!check_salzmann(&spec(&[1, 1, 0, -1])));
        let m = realize_salzmann(&spec(&[2, 0, -1, -1])).unwrap();
        check_realized(&m, &[2, 0, -1, -1]);
        assert_eq!(m.row_sum_tag(), Some(&rat(2)));

        let z = realize_salzmann(&spec(&[0, 0])).unwrap();
        assert_eq!(z.row(0), vec![rat(0), rat(0)]);
        assert_eq!(z.row(1), vec![rat(0), rat(0)]);

        // odd order with a middle element
        check_realized(&realize_salzmann(&spec(&[4, 1, -1, -2, -2])).unwrap(), &[4, 1, -1, -2, -2]);
    }

    #[test]
    fn salzmann_trace_zero_golden() {
        let m = realize_salzmann(&spec(&[2, 0, -1, -1])).unwrap();
        let want = [[0, 1, 0, 1], [1, 0, 0, 1], [0, 1, 0, 1], [0, 1, 1, 0]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[(i, j)], rat(want[i][j]), "at ({i},{j})");
            }
        }
    }

    #[test]
    fn kellogg_examples() {
        let err = check_kellogg(&spec(&[6, 3, 3, -5, -5])).unwrap_err();
        assert!(err.to_string().contains("k=3"), "{err}");

        let d = check_kellogg(&spec(&[7, 3, 3, -5, -5])).unwrap();
        assert_eq!(d.k_set, vec![2, 3]);
        assert_eq!(d.p, 3);
        assert_eq!(d.mu, rat(3));

        let err = check_kellogg(&spec(&[4, 2, -1, -1, -1, -1, -1, -1])).unwrap_err();
        assert!(err.to_string().contains("residual-sum"), "{err}");
    }

    #[test]
    fn kellogg_realize_golden() {
        let s = spec(&[7, 3, 3, -5, -5]);
        let d = check_kellogg(&s).unwrap();
        let m = realize_kellogg(&s, &d).unwrap();
        let want = [
            [3, 0, 2, 0, 2],
            [0, 0, 5, 0, 2],
            [0, 5, 0, 0, 2],
            [0, 0, 2, 0, 5],
            [0, 0, 2, 5, 0],
        ];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m[(i, j)], rat(want[i][j]), "at ({i},{j})");
            }
        }
        check_realized(&m, &[7, 3, 3, -5, -5]);
    }

    #[test]
    fn kellogg_realize_more_cases() {
        for vals in [
            vec![6i64, 1, -1, -2, -4],
            vec![12, 11, 2, -3, -11],
            vec![5, 3, -1, -2, -2],
            vec![9, 4, 2, 1, -3, -4, -4, -5],
            vec![3, -1, -1, -1],
            vec![5, 3],
            vec![6, 2, 1, -3, -4],
        ] {
            let s = spec(&vals);
            if let Ok(d) = check_kellogg(&s) {
                let m = realize_kellogg(&s, &d).unwrap();
                check_realized(&m, &vals);
            } else {
                panic!("expected acceptance for {vals:?}");
            }
        }
    }

    #[test]
    fn expand_list_goldens() {
        let b = expand_list(&rat(3), &[rat(-2), rat(-2)]).unwrap();
        let want = [[0, 0, 3], [1, 0, 2], [0, 4, -1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b[(i, j)], rat(want[i][j]));
            }
        }
        let b = expand_list(&rat(3), &[rat(-4)]).unwrap();
        assert_eq!(b.row(0), vec![rat(0), rat(3)]);
        assert_eq!(b.row(1), vec![rat(4), rat(-1)]);
        let b = expand_list(&rat(0), &[rat(-1)]).unwrap();
        assert_eq!(b.row(0), vec![rat(0), rat(0)]);
        assert_eq!(b.row(1), vec![rat(1), rat(-1)]);

        assert_eq!(
            expand_list(&rat(-1), &[rat(-1)]).unwrap_err().tag(),
            "bad-signs"
        );
        assert_eq!(
            expand_list(&rat(1), &[rat(0)]).unwrap_err().tag(),
            "bad-signs"
        );
    }

    #[test]
    fn borobia_witness() {
        let s = spec(&[4, 2, -1, -1, -1, -1, -1, -1]);
        assert!(check_kellogg(&s).is_err());
        let part = find_borobia_partition(&s).unwrap();
        // Fewest-groups-first search: the two-group merge (-4, -2) already
        // passes, so it wins over finer partitions.
        let merged: Vec<i64> = part.gamma.iter().map(|v| v.to_f64() as i64).collect();
        assert_eq!(merged, vec![4, 2, -2, -4]);
        let flattened: usize = part.blocks.iter().map(Vec::len).sum();
        assert_eq!(flattened, 6);
        let m = realize_borobia(&s, &part).unwrap();
        assert_eq!(m.order(), 8);
        check_realized(&m, &[4, 2, -1, -1, -1, -1, -1, -1]);
    }

    #[test]
    fn borobia_specific_pair_merge() {
        // Merging just two of the six -1 entries also passes the checker;
        // realize that partition directly.
        let s = spec(&[4, 2, -1, -1, -1, -1, -1, -1]);
        let blocks = vec![
            vec![rat(-1), rat(-1)],
            vec![rat(-1)],
            vec![rat(-1)],
            vec![rat(-1)],
            vec![rat(-1)],
        ];
        let elems = super::gamma_elems(&[rat(4), rat(2)], &blocks);
        let gamma: Vec<BigRational> = elems.iter().map(|e| e.value()).collect();
        let data = super::kellogg_on_values(&gamma).unwrap();
        let part = BorobiaPartition {
            blocks,
            gamma,
            data,
        };
        let m = realize_borobia(&s, &part).unwrap();
        assert_eq!(m.order(), 8);
        check_realized(&m, &[4, 2, -1, -1, -1, -1, -1, -1]);
    }

    #[test]
    fn borobia_contains_kellogg() {
        let s = spec(&[7, 3, 3, -5, -5]);
        let part = find_borobia_partition(&s).unwrap();
        let m = realize_borobia(&s, &part).unwrap();
        check_realized(&m, &[7, 3, 3, -5, -5]);
    }

    #[test]
    fn borobia_rejections() {
        assert_eq!(
            find_borobia_partition(&spec(&[1, -1, -1]))
                .unwrap_err()
                .tag(),
            "no-partition-found"
        );
        let mut vals = vec![1i64];
        vals.extend(core::iter::repeat(-1).take(13));
        assert_eq!(
            find_borobia_partition(&spec(&vals)).unwrap_err().tag(),
            "tail-too-large"
        );
    }

    #[test]
    fn complex_region_checks() {
        let s = Spectrum::normalize(&[
            Complex::new(rat(2), rat(0)),
            Complex::new(rat(-1), rat(1)),
            Complex::new(rat(-1), rat(-1)),
        ])
        .unwrap();
        assert!(check_complex_region(&s, RegionTag::Sqrt3Wedge));
        assert!(check_complex_region(&s, RegionTag::ReDominant));

        let s = Spectrum::normalize(&[
            Complex::new(rat(3), rat(0)),
            Complex::new(rat(-1), rat(2)),
            Complex::new(rat(-1), rat(-2)),
        ])
        .unwrap();
        assert!(!check_complex_region(&s, RegionTag::Sqrt3Wedge));
        let err = realize_complex_smigoc(&s).unwrap_err();
        assert_eq!(err.tag(), "region-violated");
    }

    #[test]
    fn wedge_realizer_small_cases() {
        // two-element real base
        let m = realize_complex_smigoc(&spec(&[3, -2])).unwrap();
        check_realized(&m, &[3, -2]);
        // three-element complex base
        let s = Spectrum::normalize(&[
            Complex::new(rat(2), rat(0)),
            Complex::new(rat(-1), rat(1)),
            Complex::new(rat(-1), rat(-1)),
        ])
        .unwrap();
        let m = realize_complex_smigoc(&s).unwrap();
        assert!(m.is_nonnegative());
        assert!(verify_spectrum(&m, &s.values).pass());
    }

    #[test]
    fn wedge_realizer_recursive_cases() {
        // five elements: one conjugate pair plus two negative reals
        let raw = [
            Complex::new(rat(6), rat(0)),
            Complex::new(rat(-1), rat(1)),
            Complex::new(rat(-1), rat(-1)),
            Complex::new(rat(-1), rat(0)),
            Complex::new(rat(-2), rat(0)),
        ];
        let s = Spectrum::normalize(&raw).unwrap();
        let m = realize_complex_smigoc(&s).unwrap();
        assert!(m.is_nonnegative());
        assert!(verify_spectrum(&m, &s.values).pass());
        assert_eq!(m.row_sum_tag(), Some(&rat(6)));

        // six elements: two conjugate pairs plus one real
        let raw = [
            Complex::new(rat(8), rat(0)),
            Complex::new(rat(-1), rat(1)),
            Complex::new(rat(-1), rat(-1)),
            Complex::new(rat(-2), rat(2)),
            Complex::new(rat(-2), rat(-2)),
            Complex::new(rat(-1), rat(0)),
        ];
        let s = Spectrum::normalize(&raw).unwrap();
        let m = realize_complex_smigoc(&s).unwrap();
        assert!(m.is_nonnegative());
        assert!(verify_spectrum(&m, &s.values).pass());

        // all-real wedge list agrees with the all-negative-tail criterion
        let s = spec(&[4, -1, -1, -2]);
        assert!(check_suleimanova(&s));
        let m = realize_complex_smigoc(&s).unwrap();
        check_realized(&m, &[4, -1, -1, -2]);
    }

    #[test]
    fn guo_bound_examples() {
        // all-real tail of ones: bound n−1, sharp
        let tail: Vec<Complex<BigRational>> = (0..3)
            .map(|_| Complex::new(rat(-1), rat(0)))
            .collect();
        let (bound, a) = guo_bound_realize(&tail).unwrap();
        assert_eq!(bound, rat(3));
        check_realized(&a, &[3, -1, -1, -1]);

        // complex pair with rational modulus: tail (-1, (-3±4i)/5) scaled
        let tail = vec![
            Complex::new(rat(-5), rat(0)),
            Complex::new(rat(-3), rat(4)),
            Complex::new(rat(-3), rat(-4)),
        ];
        let (bound, a) = guo_bound_realize(&tail).unwrap();
        assert_eq!(bound, rat(15));
        assert!(a.is_nonnegative());
        let mut lam = vec![Complex::new(rat(15), rat(0))];
        lam.extend(tail.clone());
        assert!(verify_spectrum(&a, &lam).pass());

        // zero tail
        let tail = vec![
            Complex::new(rat(0), rat(0)),
            Complex::new(rat(0), rat(0)),
        ];
        let (bound, a) = guo_bound_realize(&tail).unwrap();
        assert_eq!(bound, rat(0));
        assert_eq!(a.order(), 3);
        assert!(a.is_nonnegative());

        // no real entry
        let tail = vec![
            Complex::new(rat(-3), rat(4)),
            Complex::new(rat(-3), rat(-4)),
        ];
        assert_eq!(
            guo_bound_realize(&tail).unwrap_err().tag(),
            "unsupported-tail"
        );

        // irrational modulus in exact mode
        let tail = vec![
            Complex::new(rat(-1), rat(1)),
            Complex::new(rat(-1), rat(-1)),
            Complex::new(rat(-1), rat(0)),
        ];
        assert_eq!(
            guo_bound_realize(&tail).unwrap_err().tag(),
            "exact-sqrt-unavailable"
        );
    }

    #[test]
    fn guo_bound_positive_real_cases() {
        // leading tail entry positive, rest negative: rearranged variant
        let tail = vec![
            Complex::new(rat(1), rat(0)),
            Complex::new(rat(-1), rat(0)),
            Complex::new(rat(-1), rat(0)),
        ];
        let (bound, a) = guo_bound_realize(&tail).unwrap();
        assert_eq!(bound, rat(3));
        check_realized(&a, &[3, 1, -1, -1]);

        // a later positive entry: zero-update-at-k variant
        let tail = vec![
            Complex::new(rat(2), rat(0)),
            Complex::new(rat(1), rat(0)),
            Complex::new(rat(-2), rat(0)),
        ];
        let (bound, a) = guo_bound_realize(&tail).unwrap();
        assert_eq!(bound, rat(6));
        check_realized(&a, &[6, 2, 1, -2]);

        // positive real part inside a complex pair
        let tail = vec![
            Complex::new(rat(-5), rat(0)),
            Complex::new(rat(3), rat(4)),
            Complex::new(rat(3), rat(-4)),
        ];
        let (bound, a) = guo_bound_realize(&tail).unwrap();
        assert_eq!(bound, rat(15));
        let mut lam = vec![Complex::new(rat(15), rat(0))];
        lam.extend(tail.clone());
        assert!(a.is_nonnegative());
        assert!(verify_spectrum(&a, &lam).pass());
    }

    #[test]
    fn rado_pipeline_reproduces_coupled_blocks() {
        let s = spec(&[6, 3, 3, -5, -5]);
        assert!(check_rado_example(&s));
        let pipe = rado_example_pipeline(&s).unwrap();
        let want_b = [[5, 0, 1], [1, 5, 0], [0, 4, 2]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pipe.b[(i, j)], rat(want_b[i][j]));
            }
        }
        let want_m = [
            [0, 5, 0, 0, 1],
            [5, 0, 0, 0, 1],
            [1, 0, 0, 5, 0],
            [1, 0, 5, 0, 0],
            [0, 0, 4, 0, 2],
        ];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(pipe.matrix[(i, j)], rat(want_m[i][j]), "at ({i},{j})");
            }
        }
        check_realized(&pipe.matrix, &[6, 3, 3, -5, -5]);
    }

    #[test]
    fn auto_dispatch_prefers_exact_criteria() {
        let out = realize_auto(&spec(&[3, -1, -1, -1])).unwrap();
        assert_eq!(out.criterion, "suleimanova");
        assert!(out.perron_shift.is_none());

        let out = realize_auto(&spec(&[6, 3, 3, -5, -5])).unwrap();
        assert_eq!(out.criterion, "rado-example");
        assert!(out.perron_shift.is_none());
        check_realized(&out.matrix, &[6, 3, 3, -5, -5]);

        // nothing applies at this head: fallback realizes the shifted list
        let out = realize_auto(&spec(&[2, -1, -1, -1, -1])).unwrap();
        assert_eq!(out.criterion, "guo");
        let shift = out.perron_shift.clone().unwrap();
        assert_eq!(shift, rat(2));
        check_realized(&out.matrix, &[4, -1, -1, -1, -1]);
    }

    #[test]
    fn negativity_examples() {
        let b = negativity_upper_bound(&spec(&[1, -1, -1])).unwrap();
        assert_eq!(b.value, rat(1));
        assert_eq!(b.witness, "suleimanova");

        let b = negativity_upper_bound(&spec(&[6, 3, 3, -5, -5])).unwrap();
        assert_eq!(b.value, rat(0));
        assert_eq!(b.witness, "rado-example");

        let b = negativity_upper_bound(&spec(&[3, -1, -1, -1])).unwrap();
        assert_eq!(b.value, rat(0));
    }
}

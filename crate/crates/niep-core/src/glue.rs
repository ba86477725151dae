//! Gluing operators: combine realizing matrices of smaller lists into one
//! realizing matrix of the merged list, or split a Perron shift across two
//! eigenvalues of a single matrix.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::linalg;
use crate::matrix::Matrix;
use crate::perturb::{rado_update, shift_perron, symmetric_rado_update, RadoUpdate};
use crate::scalar::{negligible, Scalar};
use crate::{tol, Error, Result};

/// Direction of the secondary move in [`guo_eps_perturb`]: the Perron root
/// always gains `eps`, the selected real eigenvalue moves by `±eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferSign {
    Plus,
    Minus,
}

fn constant_row_sum<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    if let Some(t) = a.row_sum_tag() {
        return Ok(t.clone());
    }
    let sums = a.row_sums();
    if sums.is_empty() {
        return Err(Error::EmptyInput("matrix has order zero".into()));
    }
    let scale = a.inf_norm();
    let first = sums[0].clone();
    for s in &sums[1..] {
        let dev = s.clone() - first.clone();
        if !negligible(&dev, tol::ROW_SUM, scale) {
            return Err(Error::ConditionsNotSatisfied(
                "row sums are not constant".into(),
            ));
        }
    }
    Ok(first)
}

fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    x.iter()
        .zip(y)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// A real eigenvector of `a` for the eigenvalue `lambda2`, scaled so its
/// largest-magnitude entry is one.
///
/// The rational backend takes the first basis vector of the exact null space
/// of A − λ₂I.  The float backend runs inverse iteration with a small shift
/// offset; the offset keeps the linear solves nonsingular while the wanted
/// eigencomponent still dominates after a few steps.  Both paths are
/// deterministic, so repeated calls pick the same vector even when λ₂ has
/// higher multiplicity.
fn eigenvector_for<S: Scalar>(a: &Matrix<S>, lambda2: &S) -> Result<Vec<S>> {
    let n = a.order();
    if S::EXACT {
        let mut shifted = a.clone().drop_tags();
        for i in 0..n {
            shifted[(i, i)] = shifted[(i, i)].clone() - lambda2.clone();
        }
        let basis = linalg::nullspace(&shifted);
        let x = basis
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotAnEigenvalue(format!("{lambda2} is not an eigenvalue")))?;
        return Ok(normalize_by_peak(x));
    }
    let rel = {
        let mag = lambda2.abs();
        if mag > S::one() {
            mag
        } else {
            S::one()
        }
    };
    let scale = a.inf_norm();
    for attempt in 0..3 {
        let offset = rel.clone() * S::from_ratio(1, 100_000_000) * S::from_int([1, 4, 16][attempt]);
        let mut shifted = a.clone().drop_tags();
        for i in 0..n {
            shifted[(i, i)] = shifted[(i, i)].clone() - lambda2.clone() - offset.clone();
        }
        let mut x: Vec<S> = (0..n)
            .map(|i| S::one() + S::from_ratio(((i * 7 + attempt) % 5) as i64, 8))
            .collect();
        for _ in 0..50 {
            let rhs = Matrix::from_fn(n, 1, |i, _| x[i].clone());
            let y = match linalg::solve(&shifted, &rhs) {
                Some(sol) => sol,
                None => break,
            };
            let col: Vec<S> = (0..n).map(|i| y[(i, 0)].clone()).collect();
            if col.iter().all(|t| t.is_zero()) {
                break;
            }
            x = normalize_by_peak(col);
            let ax = a.mul_vec(&x);
            let converged = (0..n).all(|i| {
                let r = ax[i].clone() - lambda2.clone() * x[i].clone();
                negligible(&r, tol::EIGENPAIR_REL, scale)
            });
            if converged {
                return Ok(x);
            }
        }
    }
    Err(Error::NotAnEigenvalue(format!(
        "inverse iteration found no eigenvector for {lambda2}"
    )))
}

fn normalize_by_peak<S: Scalar>(x: Vec<S>) -> Vec<S> {
    let mut peak = 0;
    for i in 1..x.len() {
        if x[i].abs() > x[peak].abs() {
            peak = i;
        }
    }
    let pivot = x[peak].clone();
    if pivot.is_zero() {
        return x;
    }
    x.into_iter().map(|t| t / pivot.clone()).collect()
}

/// Splits a Perron shift across two eigenvalues of a constant-row-sum matrix:
/// for A ∈ CS_{λ₁} with real eigenvalue λ₂, returns a nonnegative matrix in
/// CS_{λ₁+ε} whose spectrum replaces λ₁, λ₂ by λ₁+ε, λ₂±ε and keeps every
/// other eigenvalue.
///
/// The update is A + XC with X = [e | x] for an eigenvector x of λ₂, and a
/// two-row C supported on the columns of the extreme entries of x.  Each row
/// of XC is a nonnegative combination of x_max − x_r and x_r − x_min, so the
/// update never subtracts from A.
pub fn guo_eps_perturb<S: Scalar>(
    a: &Matrix<S>,
    lambda2: &Complex<S>,
    eps: &S,
    sign: TransferSign,
) -> Result<Matrix<S>> {
    if eps.is_negative() {
        return Err(Error::NegativeEps(format!("eps {eps} is negative")));
    }
    let lscale = lambda2.re.abs().to_f64() + lambda2.im.abs().to_f64();
    if !negligible(&lambda2.im, tol::COEFF, lscale) {
        return Err(Error::Lambda2NotReal(format!(
            "eigenvalue {} + {}i is not real",
            lambda2.re, lambda2.im
        )));
    }
    let alpha = constant_row_sum(a)?;
    let lam2 = lambda2.re.clone();
    let x = eigenvector_for(a, &lam2)?;
    let n = a.order();
    let mut i_max = 0;
    let mut i_min = 0;
    for i in 1..n {
        if x[i] > x[i_max] {
            i_max = i;
        }
        if x[i] < x[i_min] {
            i_min = i;
        }
    }
    let range = x[i_max].clone() - x[i_min].clone();
    let xscale = x.iter().map(|t| t.norm1()).fold(0.0, f64::max);
    if negligible(&range, tol::COEFF, xscale) {
        return Err(Error::DegenerateEigenvector(
            "eigenvector has no spread between its extreme entries".into(),
        ));
    }
    let unit = eps.clone() / range;
    let mut c = Matrix::zeros(2, n);
    match sign {
        TransferSign::Plus => {
            c[(0, i_max)] = -(x[i_min].clone() * unit.clone());
            c[(0, i_min)] = x[i_max].clone() * unit.clone();
            c[(1, i_max)] = unit.clone();
            c[(1, i_min)] = -unit;
        }
        TransferSign::Minus => {
            c[(0, i_max)] = x[i_max].clone() * unit.clone();
            c[(0, i_min)] = -(x[i_min].clone() * unit.clone());
            c[(1, i_max)] = -unit.clone();
            c[(1, i_min)] = unit;
        }
    }
    let xmat = Matrix::from_fn(n, 2, |i, j| if j == 0 { S::one() } else { x[i].clone() });
    let upd = RadoUpdate {
        x: xmat,
        c,
        omega: vec![alpha.clone(), lam2],
    };
    let out = rado_update(a, &upd)?;
    out.tag_row_sum(alpha + eps.clone())
}

/// Stacks two constant-row-sum realizing matrices into one whose spectrum is
/// the union of theirs with the Perron roots traded by `eps`: for A₁ ∈ CS_{α₁}
/// and A₂ ∈ CS_{β₁} the output lies in CS_{α₁+ε} and realizes
/// {α₁+ε, β₁−ε} ∪ tail(A₁) ∪ tail(A₂).
///
/// Requires eps ≥ max(β₁ − α₁, 0); the boundary value keeps the coupling
/// column at exactly zero.
pub fn merge_lists_eps<S: Scalar>(a1: &Matrix<S>, a2: &Matrix<S>, eps: &S) -> Result<Matrix<S>> {
    let alpha = constant_row_sum(a1)?;
    let beta = constant_row_sum(a2)?;
    let mut bound = beta.clone() - alpha.clone();
    if bound.is_negative() {
        bound = S::zero();
    }
    let deficit = bound.clone() - eps.clone();
    let dscale = bound.to_f64().abs().max(eps.to_f64().abs());
    if deficit > S::zero() && !negligible(&deficit, tol::COEFF, dscale) {
        return Err(Error::EpsTooSmall(format!(
            "eps {eps} is below the merge threshold {bound}"
        )));
    }
    let n1 = a1.order();
    let n2 = a2.order();
    let mut b = Matrix::zeros(n1 + n2, n1 + n2);
    b.set_block(0, 0, &a2.clone().drop_tags());
    let coupling = alpha.clone() - beta.clone() + eps.clone();
    for i in 0..n2 {
        b[(i, 0)] = b[(i, 0)].clone() - eps.clone();
        b[(i, n2)] = coupling.clone();
    }
    b.set_block(n2, n2, &a1.clone().drop_tags());
    let b = b.tag_row_sum(alpha)?;
    shift_perron(&b, eps)
}

/// Similarity by the transposition (idx, n−1): moves the diagonal entry at
/// `idx` to the corner position without changing the spectrum.
pub fn swap_to_corner<S: Scalar>(a: &Matrix<S>, idx: usize) -> Matrix<S> {
    let n = a.order();
    assert!(idx < n, "diagonal index out of range");
    let map = |i: usize| {
        if i == idx {
            n - 1
        } else if i == n - 1 {
            idx
        } else {
            i
        }
    };
    Matrix::from_fn(n, n, |i, j| a[(map(i), map(j))].clone())
}

/// Glues a nonnegative matrix A with corner entry c at position (n,n) to a
/// constant-row-sum matrix B with Perron root λ₁ ≤ c: the output has order
/// n + m − 1 and spectrum Λ(A) ∪ (Λ(B) ∖ {λ₁}).
///
/// When λ₁ < c the gap is closed first by adding c − λ₁ to the column of B's
/// largest diagonal entry, which moves λ₁ to c and lifts that diagonal entry
/// to d + c − λ₁.  The glue itself is a rank-n update of diag(a₁₁, …,
/// a_{n−1,n−1}) ⊕ B′ that reinstalls the off-diagonal part of A across the
/// seam.
pub fn smigoc_glue<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    let n = a.order();
    let m = b.order();
    if n == 0 || m == 0 {
        return Err(Error::EmptyInput("glue factors must have positive order".into()));
    }
    let corner = a[(n - 1, n - 1)].clone();
    let lam1 = constant_row_sum(b)?;
    let excess = lam1.clone() - corner.clone();
    let escale = lam1.to_f64().abs().max(corner.to_f64().abs());
    if excess > S::zero() && !negligible(&excess, tol::COEFF, escale) {
        return Err(Error::PerronExceedsCorner(format!(
            "Perron root {lam1} exceeds the corner entry {corner}"
        )));
    }
    let mut mpos = 0;
    for i in 1..m {
        if b[(i, i)] > b[(mpos, mpos)] {
            mpos = i;
        }
    }
    let bump = corner.clone() - lam1;
    let mut bprime = b.clone().drop_tags();
    for i in 0..m {
        bprime[(i, mpos)] = bprime[(i, mpos)].clone() + bump.clone();
    }
    let total = n - 1 + m;
    let mut base = Matrix::zeros(total, total);
    for i in 0..n - 1 {
        base[(i, i)] = a[(i, i)].clone();
    }
    base.set_block(n - 1, n - 1, &bprime);
    let xmat = Matrix::from_fn(total, n, |i, j| {
        if j < n - 1 {
            if i == j {
                S::one()
            } else {
                S::zero()
            }
        } else if i >= n - 1 {
            S::one()
        } else {
            S::zero()
        }
    });
    let cmat = Matrix::from_fn(n, total, |i, j| {
        if i < n - 1 {
            if j < n - 1 {
                if i == j {
                    S::zero()
                } else {
                    a[(i, j)].clone()
                }
            } else if j == n - 1 {
                a[(i, n - 1)].clone()
            } else {
                S::zero()
            }
        } else if j < n - 1 {
            a[(n - 1, j)].clone()
        } else {
            S::zero()
        }
    });
    let mut omega: Vec<S> = (0..n - 1).map(|i| a[(i, i)].clone()).collect();
    omega.push(corner);
    let out = rado_update(
        &base,
        &RadoUpdate {
            x: xmat,
            c: cmat,
            omega,
        },
    )?;
    match a.row_sum_tag() {
        Some(alpha) => out.tag_row_sum(alpha.clone()),
        None => Ok(out),
    }
}

fn unit_eigen_value<S: Scalar>(m: &Matrix<S>, w: &[S], label: &str) -> Result<S> {
    if w.len() != m.order() {
        return Err(Error::DimensionMismatch(format!(
            "{label} has length {} but the matrix has order {}",
            w.len(),
            m.order()
        )));
    }
    let norm2 = dot(w, w);
    let dev = norm2.clone() - S::one();
    if !negligible(&dev, tol::COEFF, 1.0) {
        return Err(Error::NotUnit(format!(
            "{label} has squared norm {norm2}"
        )));
    }
    Ok(dot(w, &m.mul_vec(w)))
}

/// Symmetric coupling of two realizing matrices: for unit eigenvectors u, v
/// of the Perron roots α₁, β₁, returns
///
/// ```text
/// [ A      ρ·u·vᵀ ]
/// [ ρ·v·uᵀ   B    ]
/// ```
///
/// whose spectrum replaces α₁, β₁ by the eigenvalues of [[α₁, ρ], [ρ, β₁]]
/// and keeps everything else.
pub fn fiedler_couple<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    u: &[S],
    v: &[S],
    rho: &S,
) -> Result<Matrix<S>> {
    let alpha1 = unit_eigen_value(a, u, "u")?;
    let beta1 = unit_eigen_value(b, v, "v")?;
    let n = a.order();
    let m = b.order();
    let x = Matrix::from_fn(n + m, 2, |i, j| {
        if j == 0 && i < n {
            u[i].clone()
        } else if j == 1 && i >= n {
            v[i - n].clone()
        } else {
            S::zero()
        }
    });
    let c = Matrix::from_fn(2, 2, |i, j| if i == j { S::zero() } else { rho.clone() });
    let base = a.direct_sum(b);
    match symmetric_rado_update(&base, &x, &c, &[alpha1, beta1]) {
        Err(Error::EigenRelationViolated(msg)) => Err(Error::NotAnEigenpair(msg)),
        other => other,
    }
}

/// [`fiedler_couple`] with the bridge weight chosen to trade `eps` between
/// the Perron roots: ρ = √(ε(ε + α₁ − β₁)) moves them to α₁ + ε and β₁ − ε.
///
/// Requires α₁ ≥ β₁ and ε ≥ 0.  The rational backend insists on ρ² being a
/// perfect square; otherwise it reports the missing root instead of silently
/// rounding.
pub fn fiedler_eps<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    u: &[S],
    v: &[S],
    eps: &S,
) -> Result<Matrix<S>> {
    if eps.is_negative() {
        return Err(Error::NegativeEps(format!("eps {eps} is negative")));
    }
    let alpha1 = unit_eigen_value(a, u, "u")?;
    let beta1 = unit_eigen_value(b, v, "v")?;
    let gap = alpha1.clone() - beta1.clone();
    let gscale = alpha1.to_f64().abs().max(beta1.to_f64().abs());
    if gap.is_negative() && !negligible(&gap, tol::COEFF, gscale) {
        return Err(Error::OrderViolated(format!(
            "Perron root {alpha1} of the first factor is below {beta1}"
        )));
    }
    let rho2 = eps.clone() * (eps.clone() + gap);
    let rho = rho2.sqrt_exact().ok_or_else(|| {
        Error::ExactSqrtUnavailable(format!(
            "bridge weight squared {rho2} has no square root in this backend"
        ))
    })?;
    fiedler_couple(a, b, u, v, &rho)
}

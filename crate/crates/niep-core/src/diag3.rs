//! 3×3 nonnegative matrices with prescribed diagonal and spectrum.
//!
//! For λ = (λ₁, λ₂, λ₃) with λ₁ real dominant and λ₂, λ₃ both real or a
//! conjugate pair, and a requested diagonal ω, the target pattern is
//!
//! ```text
//!     ⎡ ω₁        0        λ₁−ω₁     ⎤
//! B = ⎢ p         ω₂       λ₁−ω₂−p   ⎥
//!     ⎣ λ₁−ω₃−q   q        ω₃        ⎦
//! ```
//!
//! which has row sums λ₁, so x − λ₁ divides the characteristic polynomial
//! and matching the second symmetric function is the only remaining
//! constraint: pq = q(ω₁−ω₂) + K₁ with K₁ = (λ₁−ω₁)(λ₁−ω₃) + e₂(λ) − e₂(ω).

use alloc::format;
use alloc::string::String;
use num_complex::Complex;

use crate::matrix::Matrix;
use crate::scalar::{negligible, FieldElem, Scalar};
use crate::{tol, Error, Result};

fn pair_products<S: Scalar>(lambda: &[Complex<S>; 3]) -> Result<(S, S, S)> {
    let l1 = &lambda[0];
    let scale = lambda.iter().map(|z| z.norm1()).fold(1.0f64, f64::max);
    if !negligible(&l1.im, tol::COEFF, scale) {
        return Err(Error::NoPerronCandidate(format!(
            "leading value {}+{}i is not real",
            l1.re, l1.im
        )));
    }
    let both_real = negligible(&lambda[1].im, tol::COEFF, scale)
        && negligible(&lambda[2].im, tol::COEFF, scale);
    let d = lambda[1].clone() - lambda[2].conj_elem();
    let conjugate =
        negligible(&d.re, tol::COEFF, scale) && negligible(&d.im, tol::COEFF, scale);
    if !(both_real || conjugate) {
        return Err(Error::NotConjugateClosed(
            "trailing pair is neither real nor conjugate".into(),
        ));
    }
    let s2 = lambda[1].re.clone() + lambda[2].re.clone();
    let p2 = (lambda[1].clone() * lambda[2].clone()).re;
    Ok((l1.re.clone(), s2, p2))
}

fn ge<S: Scalar>(a: &S, b: &S, slack: f64) -> bool {
    if S::EXACT {
        a >= b
    } else {
        a.to_f64() + slack >= b.to_f64()
    }
}

/// Whether (ω, λ) admits the pattern above: every ωₖ in [0, λ₁], traces
/// matching, e₂(ω) ≥ e₂(λ), and max ωₖ at least the largest trailing real
/// part.  Errors only on malformed λ.
pub fn check_perfect_conditions<S: Scalar>(
    omega: &[S; 3],
    lambda: &[Complex<S>; 3],
) -> Result<bool> {
    let (l1, s2, p2) = pair_products(lambda)?;
    let scale = omega
        .iter()
        .map(|w| w.to_f64().abs())
        .fold(l1.to_f64().abs().max(1.0), f64::max);
    let slack = tol::COEFF * scale.max(1.0);

    let zero = S::zero();
    for w in omega {
        if !(ge(w, &zero, slack) && ge(&l1, w, slack)) {
            return Ok(false);
        }
    }
    let trace = omega[0].clone() + omega[1].clone() + omega[2].clone();
    let want = l1.clone() + s2.clone();
    let d = trace - want;
    if !negligible(&d, tol::COEFF, scale) {
        return Ok(false);
    }
    let e2_omega = omega[0].clone() * omega[1].clone()
        + omega[0].clone() * omega[2].clone()
        + omega[1].clone() * omega[2].clone();
    let e2_lambda = l1.clone() * s2.clone() + p2.clone();
    if !ge(&e2_omega, &e2_lambda, slack * scale.max(1.0)) {
        return Ok(false);
    }
    let mut wmax = omega[0].clone();
    for w in &omega[1..] {
        if *w > wmax {
            wmax = w.clone();
        }
    }
    let mut remax = lambda[1].re.clone();
    if lambda[2].re > remax {
        remax = lambda[2].re.clone();
    }
    Ok(ge(&wmax, &remax, slack))
}

fn clamp_nonneg<S: Scalar>(x: S) -> S {
    if x.is_negative() {
        S::zero()
    } else {
        x
    }
}

/// Solve pq = q(ω₁−ω₂) + K₁ with 0 ≤ p ≤ λ₁−ω₂ and 0 ≤ q ≤ λ₁−ω₃,
/// preferring minimal q.  Returns None when this orientation is infeasible.
fn solve_orientation<S: Scalar>(l1: &S, w: &[S; 3], e2_gap: &S) -> Option<(S, S)> {
    let u = clamp_nonneg(l1.clone() - w[0].clone());
    let cap_q = clamp_nonneg(l1.clone() - w[2].clone());
    // K₁ = u(λ₁−ω₃) − (e₂(ω) − e₂(λ))
    let k1 = u.clone() * (l1.clone() - w[2].clone()) - e2_gap.clone();
    let zero = S::zero();
    let scale = l1.to_f64().abs().max(1.0);
    if negligible(&k1, tol::COEFF, scale * scale) {
        return Some((zero.clone(), zero));
    }
    if k1 > zero {
        if u.is_zero() {
            return None;
        }
        let q = k1.clone() / u.clone();
        let p = (w[0].clone() - w[1].clone()) + u;
        if !p.is_negative() && !q.is_negative() && ge(&cap_q, &q, tol::COEFF * scale) {
            return Some((p, q));
        }
        return None;
    }
    // k1 < 0: p = 0, q = −K₁/(ω₁−ω₂), feasible iff ω₁ > ω₂ and q fits.
    let gap = w[0].clone() - w[1].clone();
    if gap <= zero {
        return None;
    }
    let q = (zero.clone() - k1) / gap;
    if ge(&cap_q, &q, tol::COEFF * scale) {
        Some((zero, q))
    } else {
        None
    }
}

fn build<S: Scalar>(l1: &S, w: &[S; 3], p: &S, q: &S) -> Matrix<S> {
    let z = S::zero();
    Matrix::from_rows(alloc::vec![
        alloc::vec![w[0].clone(), z.clone(), l1.clone() - w[0].clone()],
        alloc::vec![
            p.clone(),
            w[1].clone(),
            l1.clone() - w[1].clone() - p.clone()
        ],
        alloc::vec![
            l1.clone() - w[2].clone() - q.clone(),
            q.clone(),
            w[2].clone()
        ],
    ])
}

const ORIENTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Nonnegative 3×3 matrix with diagonal ω, spectrum λ, and constant row sums
/// λ₁.  Tries the pattern in all diagonal orderings (undoing the reordering
/// by permutation similarity), then a coarse grid on q as a last resort.
pub fn construct_3x3<S: Scalar>(omega: &[S; 3], lambda: &[Complex<S>; 3]) -> Result<Matrix<S>> {
    if !check_perfect_conditions(omega, lambda)? {
        return Err(Error::ConditionsNotSatisfied(String::from(
            "diagonal/spectrum pair fails the pattern conditions",
        )));
    }
    let (l1, s2, p2) = pair_products(lambda)?;
    let e2_omega = omega[0].clone() * omega[1].clone()
        + omega[0].clone() * omega[2].clone()
        + omega[1].clone() * omega[2].clone();
    let e2_gap = e2_omega - (l1.clone() * s2 + p2);

    for perm in &ORIENTATIONS {
        let w = [
            omega[perm[0]].clone(),
            omega[perm[1]].clone(),
            omega[perm[2]].clone(),
        ];
        if let Some((p, q)) = solve_orientation(&l1, &w, &e2_gap) {
            let b = build(&l1, &w, &p, &q);
            if !b.is_nonnegative() {
                continue;
            }
            let m = unpermute(&b, perm);
            return m.tag_row_sum(l1);
        }
    }

    // Grid fallback: scan q over [0, λ₁−ω₃] in each orientation and solve
    // for p exactly from the product constraint.
    for perm in &ORIENTATIONS {
        let w = [
            omega[perm[0]].clone(),
            omega[perm[1]].clone(),
            omega[perm[2]].clone(),
        ];
        let cap_q = clamp_nonneg(l1.clone() - w[2].clone());
        if cap_q.is_zero() {
            continue;
        }
        let k1 = (l1.clone() - w[0].clone()) * (l1.clone() - w[2].clone()) - e2_gap.clone();
        for num in 1..=64i64 {
            let q = cap_q.clone() * S::from_ratio(num, 64);
            let p = (w[0].clone() - w[1].clone()) + k1.clone() / q.clone();
            if p.is_negative() {
                continue;
            }
            let b = build(&l1, &w, &p, &q);
            if b.is_nonnegative() {
                let m = unpermute(&b, perm);
                return m.tag_row_sum(l1);
            }
        }
    }
    Err(Error::NoNonnegativeRoot(String::from(
        "pattern admits no nonnegative solution in any diagonal order",
    )))
}

/// Convenience wrapper for an all-real spectrum.
pub fn construct_3x3_real<S: Scalar>(omega: &[S; 3], lambda: &[S; 3]) -> Result<Matrix<S>> {
    let lc = [
        Complex::new(lambda[0].clone(), S::zero()),
        Complex::new(lambda[1].clone(), S::zero()),
        Complex::new(lambda[2].clone(), S::zero()),
    ];
    construct_3x3(omega, &lc)
}

fn unpermute<S: Scalar>(b: &Matrix<S>, perm: &[usize; 3]) -> Matrix<S> {
    // b has diagonal (ω_{perm[0]}, ω_{perm[1]}, ω_{perm[2]}); conjugating by
    // the permutation puts ω_i back on row i.
    let mut inv = [0usize; 3];
    for (k, &i) in perm.iter().enumerate() {
        inv[i] = k;
    }
    Matrix::from_fn(3, 3, |i, j| b[(inv[i], inv[j])].clone())
}

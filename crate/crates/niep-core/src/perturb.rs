//! Spectrum-surgery updates: rank-one and rank-r additive perturbations that
//! move a known subset of eigenvalues while provably fixing the rest.

use alloc::format;
use alloc::vec::Vec;

use crate::linalg;
use crate::matrix::{outer, Matrix};
use crate::scalar::{negligible, Scalar};
use crate::{tol, Error, Result};

/// Data for a rank-r update A ↦ A + XC: the columns of X span an invariant
/// subspace with AX = X·diag(omega), and C is any r×n coefficient block.
#[derive(Clone, Debug)]
pub struct RadoUpdate<S: Scalar> {
    pub x: Matrix<S>,
    pub c: Matrix<S>,
    pub omega: Vec<S>,
}

fn eigen_residual_ok<S: Scalar>(a: &Matrix<S>, x: &Matrix<S>, omega: &[S]) -> bool {
    let ax = a.mul(x);
    let scale = a.inf_norm().max(1.0) * x.max_norm1().max(1.0);
    for j in 0..x.cols() {
        for i in 0..x.rows() {
            let d = ax[(i, j)].clone() - x[(i, j)].clone() * omega[j].clone();
            if !negligible(&d, tol::EIGENPAIR_REL, scale) {
                return false;
            }
        }
    }
    true
}

/// A + vqᵀ: moves the eigenvalue of the pair (λ_k, v) to λ_k + qᵀv and fixes
/// the remaining eigenvalues.  When A has constant row sums and v is the
/// all-ones vector the result is tagged with row sum α + Σq.
pub fn brauer_update<S: Scalar>(
    a: &Matrix<S>,
    v: &[S],
    q: &[S],
    lambda_k: &S,
) -> Result<Matrix<S>> {
    let n = a.order();
    if v.len() != n || q.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix order {n} vs vector lengths {} and {}",
            v.len(),
            q.len()
        )));
    }
    let xcol = Matrix::from_fn(n, 1, |i, _| v[i].clone());
    if !eigen_residual_ok(a, &xcol, core::slice::from_ref(lambda_k)) {
        return Err(Error::NotAnEigenpair(format!(
            "A·v differs from {lambda_k}·v beyond tolerance"
        )));
    }
    let out = a.add(&outer(v, q));
    if let Some(alpha) = a.row_sum_tag() {
        if v.iter().all(|t| t.is_one()) {
            let shift = q.iter().fold(S::zero(), |acc, t| acc + t.clone());
            return out.tag_row_sum(alpha.clone() + shift);
        }
    }
    Ok(out)
}

/// A + XC for a rank-r invariant block: the eigenvalues diag(omega) of the
/// invariant columns are replaced by the eigenvalues of diag(omega) + CX.
pub fn rado_update<S: Scalar>(a: &Matrix<S>, upd: &RadoUpdate<S>) -> Result<Matrix<S>> {
    let n = a.order();
    let r = upd.x.cols();
    if upd.x.rows() != n || upd.c.rows() != r || upd.c.cols() != n || upd.omega.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "order {n}: X is {}x{}, C is {}x{}, omega has {}",
            upd.x.rows(),
            upd.x.cols(),
            upd.c.rows(),
            upd.c.cols(),
            upd.omega.len()
        )));
    }
    if linalg::rank(&upd.x) < r {
        return Err(Error::RankDeficientX(format!(
            "X has fewer than {r} independent columns"
        )));
    }
    if !eigen_residual_ok(a, &upd.x, &upd.omega) {
        return Err(Error::EigenRelationViolated(
            "A·X differs from X·diag(omega) beyond tolerance".into(),
        ));
    }
    Ok(a.add(&upd.x.mul(&upd.c)))
}

/// Symmetric variant A + XCXᵀ with X orthonormal and C symmetric: replaces
/// the eigenvalues omega by the eigenvalues of diag(omega) + C.
pub fn symmetric_rado_update<S: Scalar>(
    a: &Matrix<S>,
    x: &Matrix<S>,
    c: &Matrix<S>,
    omega: &[S],
) -> Result<Matrix<S>> {
    let n = a.order();
    let r = x.cols();
    if x.rows() != n || c.rows() != r || c.cols() != r || omega.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "order {n}: X is {}x{}, C is {}x{}, omega has {}",
            x.rows(),
            x.cols(),
            c.rows(),
            c.cols(),
            omega.len()
        )));
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric("base matrix is not symmetric".into()));
    }
    if !c.is_symmetric() {
        return Err(Error::NotSymmetric("coefficient block is not symmetric".into()));
    }
    let gram = x.transpose().mul(x);
    let scale = x.max_norm1().max(1.0);
    for i in 0..r {
        for j in 0..r {
            let want = if i == j { S::one() } else { S::zero() };
            let d = gram[(i, j)].clone() - want;
            if !negligible(&d, tol::COEFF, scale * scale) {
                return Err(Error::NotOrthonormal(format!(
                    "XᵀX deviates from identity at ({i},{j})"
                )));
            }
        }
    }
    if !eigen_residual_ok(a, x, omega) {
        return Err(Error::EigenRelationViolated(
            "A·X differs from X·diag(omega) beyond tolerance".into(),
        ));
    }
    let mut out = a.add(&x.mul(c).mul(&x.transpose()));
    // Rebuild from the upper triangle so the output is symmetric entry for
    // entry even when float rounding of the two product orders disagrees.
    for i in 0..n {
        for j in i + 1..n {
            out[(j, i)] = out[(i, j)].clone();
        }
    }
    out.tag_symmetric()
}

/// A + ε·e·e₁ᵀ for a constant-row-sum matrix: adds ε to the first column,
/// moving the row-sum eigenvalue α to α + ε and fixing the rest.
pub fn shift_perron<S: Scalar>(a: &Matrix<S>, eps: &S) -> Result<Matrix<S>> {
    if eps.is_negative() {
        return Err(Error::NegativeEps(format!("shift {eps} is negative")));
    }
    let n = a.order();
    let alpha = match a.row_sum_tag() {
        Some(t) => t.clone(),
        None => {
            let sums = a.row_sums();
            let scale = a.inf_norm().max(1.0);
            let first = sums[0].clone();
            for s in &sums[1..] {
                let d = s.clone() - first.clone();
                if !negligible(&d, tol::ROW_SUM, scale) {
                    return Err(Error::ConditionsNotSatisfied(
                        "row sums are not constant".into(),
                    ));
                }
            }
            first
        }
    };
    let mut out = a.clone().drop_tags();
    for i in 0..n {
        out[(i, 0)] = out[(i, 0)].clone() + eps.clone();
    }
    out.tag_row_sum(alpha + eps.clone())
}

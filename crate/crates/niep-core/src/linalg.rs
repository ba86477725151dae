//! Elimination-based linear algebra over the generic field (rank, solve,
//! inverse, nullspace) and a one-sided Jacobi SVD for the float backend.
//!
//! The exact backend treats a pivot as zero only when it is exactly zero;
//! the float backend uses the crate pivot threshold scaled by the largest
//! input entry. Pivots are chosen by largest magnitude within the column.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::matrix::Matrix;
use crate::scalar::FieldElem;
use crate::tol;

struct Eliminated<T> {
    /// Row-reduced echelon form.
    rref: Matrix<T>,
    /// Column index of the pivot in each reduced row.
    pivot_cols: Vec<usize>,
}

fn eliminate<T: FieldElem>(a: &Matrix<T>) -> Eliminated<T> {
    let mut m = a.clone().drop_tags_generic();
    let (rows, cols) = (m.rows(), m.cols());
    let zero_cut = if T::EXACT_ELEM {
        0.0
    } else {
        tol::PIVOT * m.max_norm1().max(1.0)
    };
    let is_zero = |x: &T| {
        if T::EXACT_ELEM {
            x.is_zero()
        } else {
            x.norm1() <= zero_cut
        }
    };
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best = r;
        for i in r..rows {
            if m[(i, c)].norm1() > m[(best, c)].norm1() {
                best = i;
            }
        }
        if is_zero(&m[(best, c)]) {
            continue;
        }
        if best != r {
            for j in 0..cols {
                let tmp = m[(r, j)].clone();
                m[(r, j)] = m[(best, j)].clone();
                m[(best, j)] = tmp;
            }
        }
        let inv = T::one() / m[(r, c)].clone();
        for j in 0..cols {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in 0..cols {
                    let v = m[(r, j)].clone() * f.clone();
                    m[(i, j)] = m[(i, j)].clone() - v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    Eliminated { rref: m, pivot_cols }
}

impl<T: FieldElem> Matrix<T> {
    fn drop_tags_generic(self) -> Self {
        self.drop_tags()
    }
}

/// Rank by row reduction.
pub fn rank<T: FieldElem>(a: &Matrix<T>) -> usize {
    eliminate(a).pivot_cols.len()
}

/// Solves A·X = B for square nonsingular A; `None` when A is singular
/// (or numerically rank-deficient in the float backend).
pub fn solve<T: FieldElem>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    assert!(a.is_square(), "solve requires a square system");
    assert_eq!(a.rows(), b.rows(), "right-hand side height mismatch");
    let n = a.rows();
    let mut aug = Matrix::zeros(n, n + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, n, b);
    let e = eliminate(&aug);
    if e.pivot_cols.len() < n || e.pivot_cols.iter().take(n).enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols());
    for i in 0..n {
        for j in 0..b.cols() {
            x[(i, j)] = e.rref[(i, n + j)].clone();
        }
    }
    Some(x)
}

/// Matrix inverse via [`solve`] against the identity.
pub fn inverse<T: FieldElem>(a: &Matrix<T>) -> Option<Matrix<T>> {
    solve(a, &Matrix::identity(a.rows()))
}

/// Basis of the right nullspace (one vector per free column of the RREF).
pub fn nullspace<T: FieldElem>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let e = eliminate(a);
    let cols = a.cols();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &e.pivot_cols {
        is_pivot[c] = true;
    }
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &pc) in e.pivot_cols.iter().enumerate() {
            v[pc] = -e.rref[(row, free)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Singular values (descending) by one-sided Jacobi on the columns.
pub fn jacobi_svd(a: &Matrix<f64>) -> Vec<f64> {
    let work = if a.rows() >= a.cols() { a.clone() } else { a.transpose() };
    let (m, n) = (work.rows(), work.cols());
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| work.col(j)).collect();
    let eps = 1e-14;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for i in 0..m {
                    alpha += u[p][i] * u[p][i];
                    beta += u[q][i] * u[q][i];
                    gamma += u[p][i] * u[q][i];
                }
                if gamma.abs() <= eps * Float::sqrt(alpha * beta) || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + Float::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / Float::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..m {
                    let up = u[p][i];
                    let uq = u[q][i];
                    u[p][i] = c * up - s * uq;
                    u[q][i] = s * up + c * uq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = u
        .iter()
        .map(|col| Float::sqrt(col.iter().map(|x| x * x).sum::<f64>()))
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Float rank: singular values above `SVD_RANK_REL` times the largest.
pub fn rank_svd(a: &Matrix<f64>) -> usize {
    let sv = jacobi_svd(a);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol::SVD_RANK_REL * top).count()
}

/// Condition number estimate σ_max/σ_min from the Jacobi SVD.
pub fn condition_number(a: &Matrix<f64>) -> f64 {
    let sv = jacobi_svd(a);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

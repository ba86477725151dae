//! Dense row-major matrices over a generic element type, with optional
//! constant-row-sum and symmetry tags whose invariants are validated when the
//! tag is attached.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex;


use crate::scalar::{complexify, negligible, FieldElem, Scalar};
use crate::{tol, Error, Result};

/// Dense matrix. Square matrices may carry a constant-row-sum tag (the
/// shared row sum α) and a symmetry tag; both are checked on attachment and
/// propagated by the operations that provably preserve them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    row_sum_tag: Option<T>,
    symmetry_tag: bool,
}

impl<T: FieldElem> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
            row_sum_tag: None,
            symmetry_tag: false,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from nested rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            row_sum_tag: None,
            symmetry_tag: false,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            row_sum_tag: None,
            symmetry_tag: false,
        }
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Square order; panics on rectangular matrices.
    pub fn order(&self) -> usize {
        assert!(self.is_square(), "order() on a rectangular matrix");
        self.rows
    }

    pub fn row_sum_tag(&self) -> Option<&T> {
        self.row_sum_tag.as_ref()
    }

    pub fn symmetry_tag(&self) -> bool {
        self.symmetry_tag
    }

    pub fn drop_tags(mut self) -> Self {
        self.row_sum_tag = None;
        self.symmetry_tag = false;
        self
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: FieldElem>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            row_sum_tag: None,
            symmetry_tag: false,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * s.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "inner dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    /// Copies `block` into `self` with its top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block overflow");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Direct sum: `self ⊕ other` on the block diagonal.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Largest entry magnitude (by the field's 1-norm proxy).
    pub fn max_norm1(&self) -> f64 {
        self.data.iter().map(FieldElem::norm1).fold(0.0, f64::max)
    }

    /// Infinity norm: max over rows of the sum of entry magnitudes.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm1()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn row_sums(&self) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone();
                }
                acc
            })
            .collect()
    }

    /// Validates the constant-row-sum invariant and attaches the tag.
    pub fn tag_row_sum(mut self, alpha: S) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "row-sum tag applies to square matrices".into(),
            ));
        }
        let scale = alpha.to_f64().abs();
        for (i, s) in self.row_sums().into_iter().enumerate() {
            let dev = s - alpha.clone();
            if !negligible(&dev, tol::ROW_SUM, scale) {
                return Err(Error::InternalConstructionError(format!(
                    "row {i} sum deviates from the tagged value by {dev}"
                )));
            }
        }
        self.row_sum_tag = Some(alpha);
        Ok(self)
    }

    /// Validates symmetry and attaches the tag.
    pub fn tag_symmetric(mut self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("symmetry tag applies to square matrices".into()));
        }
        let scale = self.max_norm1();
        for i in 0..self.rows {
            for j in 0..i {
                let dev = self[(i, j)].clone() - self[(j, i)].clone();
                if !negligible(&dev, tol::SYMMETRIC, scale) {
                    return Err(Error::NotSymmetric(format!(
                        "entries ({i},{j}) and ({j},{i}) differ by {dev}"
                    )));
                }
            }
        }
        self.symmetry_tag = true;
        Ok(self)
    }

    /// True when every entry clears `-tol` (exactly nonnegative for the
    /// rational backend).
    pub fn is_nonnegative(&self) -> bool {
        self.most_negative_entry().map_or(true, |(_, _, v)| {
            if S::EXACT {
                !v.is_negative()
            } else {
                v.to_f64() >= -tol::NONNEG
            }
        })
    }

    /// Position and value of the smallest entry, if any entry is negative;
    /// `None` for an entrywise-nonnegative matrix with no negative entry.
    pub fn most_negative_entry(&self) -> Option<(usize, usize, S)> {
        let mut worst: Option<(usize, usize, S)> = None;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &self[(i, j)];
                if v.is_negative() {
                    let beats = worst.as_ref().map_or(true, |(_, _, w)| *v < *w);
                    if beats {
                        worst = Some((i, j, v.clone()));
                    }
                }
            }
        }
        worst
    }

    /// Smallest entry of the matrix (not restricted to negatives).
    pub fn min_entry(&self) -> Option<S> {
        let mut it = self.data.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |m, v| if *v < m { v.clone() } else { m }))
    }

    pub fn to_complex(&self) -> Matrix<Complex<S>> {
        self.map(complexify)
    }

    /// Checks symmetry without attaching the tag.
    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.max_norm1();
        for i in 0..self.rows {
            for j in 0..i {
                let dev = self[(i, j)].clone() - self[(j, i)].clone();
                if !negligible(&dev, tol::SYMMETRIC, scale) {
                    return false;
                }
            }
        }
        true
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Rank-one outer product v·wᵀ.
pub fn outer<T: FieldElem>(v: &[T], w: &[T]) -> Matrix<T> {
    Matrix::from_fn(v.len(), w.len(), |i, j| v[i].clone() * w[j].clone())
}

/// All-ones column of length n.
pub fn ones<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::one(); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(BigInt::from(v)))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn multiply_against_hand_product() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        let b = qm(&[&[5, 6], &[7, 8]]);
        assert_eq!(a.mul(&b), qm(&[&[19, 22], &[43, 50]]));
    }

    #[test]
    fn row_sum_tag_validates() {
        let a = qm(&[&[0, 5], &[5, 0]]);
        let tagged = a.tag_row_sum(BigRational::from_integer(BigInt::from(5))).unwrap();
        assert_eq!(
            tagged.row_sum_tag().unwrap(),
            &BigRational::from_integer(BigInt::from(5))
        );
        let bad = qm(&[&[0, 5], &[4, 0]]).tag_row_sum(BigRational::from_integer(BigInt::from(5)));
        assert!(bad.is_err());
    }

    #[test]
    fn symmetry_tag_validates() {
        assert!(qm(&[&[1, 2], &[2, 1]]).tag_symmetric().is_ok());
        assert!(qm(&[&[1, 2], &[3, 1]]).tag_symmetric().is_err());
    }

    #[test]
    fn nonnegativity_and_most_negative() {
        let a = qm(&[&[1, -2], &[3, -7]]);
        let (i, j, v) = a.most_negative_entry().unwrap();
        assert_eq!((i, j), (1, 1));
        assert_eq!(v, BigRational::from_integer(BigInt::from(-7)));
        assert!(!a.is_nonnegative());
        assert!(qm(&[&[0, 1], &[2, 0]]).is_nonnegative());
    }

    #[test]
    fn direct_sum_places_blocks() {
        let a = qm(&[&[1]]);
        let b = qm(&[&[2, 3], &[4, 5]]);
        let s = a.direct_sum(&b);
        assert_eq!(s, qm(&[&[1, 0, 0], &[0, 2, 3], &[0, 4, 5]]));
    }

    #[test]
    fn norms_match_hand_values() {
        let a = Matrix::<f64>::from_rows(vec![vec![1.0, -2.0], vec![3.0, -4.5]]);
        assert_eq!(a.max_norm1(), 4.5);
        assert_eq!(a.inf_norm(), 7.5);
    }
}

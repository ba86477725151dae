//! The independent oracle: characteristic polynomials by the
//! Faddeev-LeVerrier trace recurrence, spectrum comparison by coefficient
//! matching, and structural predicates (nonnegativity, row sums, symmetry).
//! Every constructor's output is expected to pass through here.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::matrix::Matrix;
use crate::scalar::{complexify, negligible, Scalar};
use crate::tol;
use crate::universal::JordanSpec;

/// Coefficients of det(xI - M), monic, descending: [1, c1, ..., cn].
pub fn char_poly<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    let n = m.order();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(S::one());
    let mut power = m.clone().drop_tags();
    for k in 1..=n {
        let mut tr = S::zero();
        for i in 0..n {
            tr = tr + power[(i, i)].clone();
        }
        let ck = -(tr / S::from_int(k as i64));
        coeffs.push(ck.clone());
        if k < n {
            let mut shifted = power;
            for i in 0..n {
                shifted[(i, i)] = shifted[(i, i)].clone() + ck.clone();
            }
            power = m.mul(&shifted);
        }
    }
    coeffs
}

/// Monic coefficients (descending) of ∏(x - rᵢ) over the complex field.
pub fn poly_from_roots<S: Scalar>(roots: &[Complex<S>]) -> Vec<Complex<S>> {
    let mut coeffs = vec![Complex::new(S::one(), S::zero())];
    for r in roots {
        coeffs.push(Complex::new(S::zero(), S::zero()));
        for k in (1..coeffs.len()).rev() {
            let prev = coeffs[k - 1].clone();
            coeffs[k] = coeffs[k].clone() - r.clone() * prev;
        }
    }
    coeffs
}

/// Real parts of complex coefficients whose imaginary parts are negligible
/// (they all are for conjugate-closed root lists); `None` otherwise.
pub fn real_coeffs<S: Scalar>(coeffs: &[Complex<S>]) -> Option<Vec<S>> {
    let scale = coeffs
        .iter()
        .map(|c| c.re.to_f64().abs())
        .fold(0.0, f64::max);
    coeffs
        .iter()
        .map(|c| {
            if negligible(&c.im, tol::COEFF, scale) {
                Some(c.re.clone())
            } else {
                None
            }
        })
        .collect()
}

/// Outcome of one characteristic-polynomial comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyCheck {
    pub ok: bool,
    /// Largest absolute coefficient deviation (0 for an exact-backend pass).
    pub max_deviation: f64,
}

/// Outcome of the entrywise nonnegativity predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct NonnegCheck<S> {
    pub ok: bool,
    /// The most negative entry, when one exists: (row, col, value).
    pub most_negative: Option<(usize, usize, S)>,
}

/// Outcome of the constant-row-sum predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSumCheck<S> {
    pub ok: bool,
    pub alpha: S,
    pub max_deviation: f64,
}

/// Aggregated verification outcome. Absent fields were not requested.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<S: Scalar> {
    pub char_poly: Option<CharPolyCheck>,
    pub nonnegative: Option<NonnegCheck<S>>,
    pub positive: Option<bool>,
    pub row_sum: Option<RowSumCheck<S>>,
    pub symmetric: Option<bool>,
    pub jordan: Option<JordanSpec<S>>,
}

impl<S: Scalar> VerificationReport<S> {
    pub fn empty() -> Self {
        VerificationReport {
            char_poly: None,
            nonnegative: None,
            positive: None,
            row_sum: None,
            symmetric: None,
            jordan: None,
        }
    }

    /// True when every requested predicate passed.
    pub fn pass(&self) -> bool {
        self.char_poly.as_ref().map_or(true, |c| c.ok)
            && self.nonnegative.as_ref().map_or(true, |c| c.ok)
            && self.positive.unwrap_or(true)
            && self.row_sum.as_ref().map_or(true, |c| c.ok)
            && self.symmetric.unwrap_or(true)
    }
}

/// Compares char_poly(M) against ∏(x-λᵢ) coefficientwise: exact equality in
/// the rational backend, relative deviation at most `tol::COEFF`·max(1,|c|)
/// in the float backend.
pub fn verify_spectrum<S: Scalar>(m: &Matrix<S>, lambda: &[Complex<S>]) -> VerificationReport<S> {
    let mut report = VerificationReport::empty();
    let got = char_poly(m);
    let want_c = poly_from_roots(lambda);
    let mut ok = true;
    let mut max_dev = 0.0f64;
    match real_coeffs::<S>(&want_c) {
        Some(want) if want.len() == got.len() => {
            for (a, b) in got.iter().zip(want.iter()) {
                let dev = a.clone() - b.clone();
                let scale = b.to_f64().abs();
                if !negligible(&dev, tol::COEFF, scale) {
                    ok = false;
                }
                max_dev = max_dev.max(dev.to_f64().abs());
            }
        }
        _ => {
            ok = false;
            max_dev = f64::INFINITY;
        }
    }
    report.char_poly = Some(CharPolyCheck { ok, max_deviation: max_dev });
    report
}

/// Convenience for real prescribed lists.
pub fn verify_real_spectrum<S: Scalar>(m: &Matrix<S>, lambda: &[S]) -> VerificationReport<S> {
    let c: Vec<Complex<S>> = lambda.iter().map(complexify).collect();
    verify_spectrum(m, &c)
}

/// Which structural predicates to evaluate.
#[derive(Debug, Clone, Default)]
pub struct StructuralWant<S> {
    pub nonnegative: bool,
    pub positive: bool,
    /// `Some(alpha)` checks membership in CS_alpha.
    pub row_sum: Option<S>,
    pub symmetric: bool,
}

/// Evaluates the requested structural predicates on M.
pub fn structural_checks<S: Scalar>(m: &Matrix<S>, want: &StructuralWant<S>) -> VerificationReport<S> {
    let mut report = VerificationReport::empty();
    if want.nonnegative {
        report.nonnegative = Some(NonnegCheck {
            ok: m.is_nonnegative(),
            most_negative: m.most_negative_entry(),
        });
    }
    if want.positive {
        let strictly = m.min_entry().map_or(false, |v| v > S::zero());
        report.positive = Some(strictly);
    }
    if let Some(alpha) = &want.row_sum {
        let scale = alpha.to_f64().abs();
        let mut ok = true;
        let mut max_dev = 0.0f64;
        for s in m.row_sums() {
            let dev = s - alpha.clone();
            if !negligible(&dev, tol::ROW_SUM, scale) {
                ok = false;
            }
            max_dev = max_dev.max(dev.to_f64().abs());
        }
        report.row_sum = Some(RowSumCheck { ok, alpha: alpha.clone(), max_deviation: max_dev });
    }
    if want.symmetric {
        report.symmetric = Some(m.is_symmetric());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        BigRational::from_integer(BigInt::from(v))
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    /// Brute-force det(xI - M) by cofactor expansion over polynomials,
    /// an independent cross-check of the trace recurrence.
    fn cofactor_char_poly(m: &Matrix<Q>) -> Vec<Q> {
        let n = m.order();
        // Polynomial entries of xI - M, ascending coefficients.
        let entries: Vec<Vec<Vec<Q>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            vec![-m[(i, j)].clone(), q(1)]
                        } else {
                            vec![-m[(i, j)].clone()]
                        }
                    })
                    .collect()
            })
            .collect();
        fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
            let mut out = vec![BigRational::from_integer(BigInt::from(0)); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = out[i + j].clone() + x.clone() * y.clone();
                }
            }
            out
        }
        fn padd(a: &[Q], b: &[Q]) -> Vec<Q> {
            let len = a.len().max(b.len());
            (0..len)
                .map(|i| {
                    let x = a.get(i).cloned().unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
                    let y = b.get(i).cloned().unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
                    x + y
                })
                .collect()
        }
        fn det(rows: &[usize], cols: &[usize], e: &Vec<Vec<Vec<Q>>>) -> Vec<Q> {
            if rows.len() == 1 {
                return e[rows[0]][cols[0]].clone();
            }
            let mut acc = vec![BigRational::from_integer(BigInt::from(0))];
            let sub_rows: Vec<usize> = rows[1..].to_vec();
            for (k, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> =
                    cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
                let mut term = pmul(&e[rows[0]][c], &det(&sub_rows, &sub_cols, e));
                if k % 2 == 1 {
                    for t in term.iter_mut() {
                        *t = -t.clone();
                    }
                }
                acc = padd(&acc, &term);
            }
            acc
        }
        let all: Vec<usize> = (0..n).collect();
        let asc = det(&all, &all, &entries);
        asc.into_iter().rev().collect()
    }

    #[test]
    fn char_poly_trivial_cases() {
        assert_eq!(char_poly(&qm(&[&[0, 5], &[5, 0]])), vec![q(1), q(0), q(-25)]);
        assert_eq!(char_poly(&Matrix::<Q>::identity(3)), vec![q(1), q(-3), q(3), q(-1)]);
    }

    #[test]
    fn char_poly_matches_cofactor_expansion_on_random_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let m = Matrix::from_fn(n, n, |_, _| {
                BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=2)))
            });
            assert_eq!(char_poly(&m), cofactor_char_poly(&m), "order {n}");
        }
    }

    #[test]
    fn char_poly_is_similarity_invariant_under_permutation() {
        let m = qm(&[&[1, 2, 0], &[0, 3, 4], &[5, 0, 6]]);
        // Cyclic permutation matrix P: e1->e2->e3->e1.
        let p = qm(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let p_inv = crate::linalg::inverse(&p).unwrap();
        let conj = p.mul(&m).mul(&p_inv);
        assert_eq!(char_poly(&m), char_poly(&conj));
    }

    #[test]
    fn poly_from_roots_expands_conjugate_pair() {
        // roots 1±2i: x² - 2x + 5
        let roots = vec![
            num_complex::Complex::new(1.0f64, 2.0),
            num_complex::Complex::new(1.0f64, -2.0),
        ];
        let c = poly_from_roots(&roots);
        let r = real_coeffs(&c).unwrap();
        assert_eq!(r, vec![1.0, -2.0, 5.0]);
    }

    #[test]
    fn verify_spectrum_passes_and_fails_correctly() {
        let m = qm(&[&[0, 5], &[5, 0]]);
        assert!(verify_real_spectrum(&m, &[q(5), q(-5)]).pass());
        let id = Matrix::<Q>::identity(2);
        let bad = verify_real_spectrum(&id, &[q(1), q(2)]);
        assert!(!bad.pass());
        assert!(bad.char_poly.unwrap().max_deviation > 0.0);
    }

    #[test]
    fn verify_spectrum_is_order_insensitive() {
        let m = qm(&[&[0, 5], &[5, 0]]);
        assert!(verify_real_spectrum(&m, &[q(-5), q(5)]).pass());
    }

    #[test]
    fn structural_checks_on_known_matrix() {
        let m = qm(&[&[3, 0, 2, 0, 1], &[0, 0, 5, 0, 1], &[0, 5, 0, 0, 1], &[0, 0, 2, 0, 4], &[0, 0, 2, 4, 0]]);
        let want = StructuralWant {
            nonnegative: true,
            positive: true,
            row_sum: Some(q(6)),
            symmetric: true,
        };
        let rep = structural_checks(&m, &want);
        assert!(rep.nonnegative.unwrap().ok);
        assert!(!rep.positive.unwrap());
        assert!(rep.row_sum.unwrap().ok);
        assert!(!rep.symmetric.unwrap());
    }

    #[test]
    fn float_backend_tolerates_roundoff() {
        let m = Matrix::<f64>::from_rows(vec![vec![0.0, 5.0], vec![5.0, 1e-12]]);
        let rep = verify_real_spectrum(&m, &[5.0, -5.0]);
        assert!(rep.pass());
        assert!(rep.char_poly.unwrap().max_deviation < 1e-9);
    }
}

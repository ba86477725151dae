//! Helpers shared by the integration-test targets: exact-backend shorthand,
//! seeded list generators, and the entrywise + characteristic-polynomial
//! assertion every constructed matrix must pass.
#![allow(dead_code)]

use num_complex::Complex;
use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use niep_core::criteria::{
    check_kellogg, check_rado_example, check_salzmann, find_borobia_partition,
};
use niep_core::matrix::Matrix;
use niep_core::scalar::Scalar;
use niep_core::spectra::Spectrum;
use niep_core::verify::{char_poly, poly_from_roots, real_coeffs, verify_real_spectrum};

pub type R = BigRational;

pub fn rat(p: i64) -> R {
    <R as Scalar>::from_int(p)
}

pub fn ratq(p: i64, q: i64) -> R {
    <R as Scalar>::from_ratio(p, q)
}

pub fn cpx(re: R) -> Complex<R> {
    Complex::new(re, rat(0))
}

pub fn spectrum(vals: &[R]) -> Spectrum<R> {
    Spectrum::from_reals(vals).expect("generator produced a dominated list")
}

/// Order bound biased toward the small end (halving odds per step up), so
/// bulk sweeps spend most cases where exact arithmetic is cheap while still
/// reaching `hi`.
pub fn weighted_order(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    let mut n = lo;
    while n < hi && rng.gen_bool(0.5) {
        n += 1;
    }
    n
}

/// Exact oracle pass: entrywise nonnegative and char poly equal to ∏(x−λ).
pub fn assert_realized(m: &Matrix<R>, vals: &[R], what: &str) {
    assert!(
        m.is_nonnegative(),
        "{what}: negative entry {:?}",
        m.most_negative_entry()
    );
    let report = verify_real_spectrum(m, vals);
    assert!(report.pass(), "{what}: char poly mismatch {report:?}");
    let got = char_poly(m);
    let want = real_coeffs(&poly_from_roots(
        &vals.iter().cloned().map(Complex::from).collect::<Vec<_>>(),
    ))
    .expect("real roots give real coefficients");
    assert_eq!(got, want, "{what}: rational coefficients must match exactly");
}

// ---------------------------------------------------------------------------
// List generators. Each returns a raw list; Spectrum::from_reals does the
// canonical ordering.
// ---------------------------------------------------------------------------

pub fn gen_suleimanova(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<R> {
    let n = rng.gen_range(2..=max_n);
    let den = *[1, 2].choose(rng).unwrap();
    let tail: Vec<R> = (1..n).map(|_| ratq(-rng.gen_range(1..=12), den)).collect();
    let deficit: R = tail.iter().fold(R::from_int(0), |a, v| a - v.clone());
    let head = deficit + ratq(rng.gen_range(1..=8), den);
    let mut vals = vec![head];
    vals.extend(tail);
    vals
}

pub fn gen_ciarlet(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<R> {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..=4);
    let den = *[1, 2].choose(rng).unwrap();
    let head = ratq(n as i64 * m + rng.gen_range(0..=5), den);
    let mut vals = vec![head];
    for _ in 1..n {
        vals.push(ratq(rng.gen_range(-m..=m), den));
    }
    vals
}

pub fn gen_salzmann(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<R> {
    loop {
        let n = rng.gen_range(2..=max_n);
        let head = rng.gen_range(4..=14);
        let mut vals = vec![rat(head)];
        for _ in 1..n {
            vals.push(rat(rng.gen_range(-head..=head / 2)));
        }
        let Ok(s) = Spectrum::from_reals(&vals) else { continue };
        if check_salzmann(&s) {
            return s.reals().unwrap();
        }
    }
}

pub fn gen_kellogg(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<R> {
    loop {
        let n = rng.gen_range(3..=max_n);
        let head = rng.gen_range(5..=15);
        let mut vals = vec![rat(head)];
        for _ in 1..n {
            vals.push(rat(rng.gen_range(-head..=head - 1)));
        }
        let Ok(s) = Spectrum::from_reals(&vals) else { continue };
        if check_kellogg(&s).is_ok() {
            return s.reals().unwrap();
        }
    }
}

pub fn gen_borobia(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<R> {
    loop {
        let n = rng.gen_range(3..=max_n);
        let head = rng.gen_range(4..=10);
        let mut vals = vec![rat(head)];
        for _ in 1..n {
            // bias toward small positives that merge into Kellogg-sized blocks
            vals.push(rat(rng.gen_range(-head..=3)));
        }
        let Ok(s) = Spectrum::from_reals(&vals) else { continue };
        if find_borobia_partition(&s).is_ok() {
            return s.reals().unwrap();
        }
    }
}

pub fn gen_rado_family(rng: &mut ChaCha8Rng) -> Vec<R> {
    loop {
        let l4 = rng.gen_range(2..=7);
        let l5 = rng.gen_range(2..=l4);
        let l2 = rng.gen_range(1..=6);
        let l3 = rng.gen_range(0..=l2);
        let l1 = rng.gen_range(l4.max(l2)..=12);
        let vals = vec![rat(l1), rat(l2), rat(l3), rat(-l4), rat(-l5)];
        let Ok(s) = Spectrum::from_reals(&vals) else { continue };
        if check_rado_example(&s) {
            return s.reals().unwrap();
        }
    }
}

/// Random nonnegative matrix with every row summing exactly to the returned
/// α: integer entries, per-row deficit absorbed on the diagonal.
pub fn gen_cs_nonneg(rng: &mut ChaCha8Rng, max_n: usize) -> (Matrix<R>, R) {
    let n = rng.gen_range(2..=max_n);
    let mut raw = vec![vec![0i64; n]; n];
    for row in raw.iter_mut() {
        for e in row.iter_mut() {
            *e = rng.gen_range(0..=6);
        }
    }
    let alpha = raw.iter().map(|r| r.iter().sum::<i64>()).max().unwrap();
    let mut m = Matrix::<R>::zeros(n, n);
    for i in 0..n {
        let sum: i64 = raw[i].iter().sum();
        for j in 0..n {
            m[(i, j)] = rat(raw[i][j]);
        }
        m[(i, i)] = m[(i, i)].clone() + rat(alpha - sum);
    }
    (m.tag_row_sum(rat(alpha)).unwrap(), rat(alpha))
}

/// Symmetric 2×2 with eigenpair ((cosθ, sinθ), a1) built from a rotation.
/// Entries are nonnegative whenever a1 ≥ a2 ≥ 0 and θ ∈ (0, π/2).
pub fn rotated_pair(a1: f64, a2: f64, theta: f64) -> (Matrix<f64>, [f64; 2]) {
    let (c, s) = (theta.cos(), theta.sin());
    let m = Matrix::from_rows(vec![
        vec![c * c * a1 + s * s * a2, c * s * (a1 - a2)],
        vec![c * s * (a1 - a2), s * s * a1 + c * c * a2],
    ]);
    (m, [c, s])
}

// ---------------------------------------------------------------------------
// Polynomial helpers for the contract identities (descending coefficients).
// ---------------------------------------------------------------------------

pub fn poly_mul(a: &[R], b: &[R]) -> Vec<R> {
    let mut out = vec![rat(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// x − c as descending coefficients.
pub fn linear(c: &R) -> Vec<R> {
    vec![rat(1), rat(0) - c.clone()]
}

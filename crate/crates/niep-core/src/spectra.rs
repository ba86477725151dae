//! Eigenvalue lists as ordered complex multisets with Perron metadata.
//!
//! A `Spectrum` stores (λ₁, …, λₙ) with λ₁ a designated real element
//! dominating every modulus.  Real lists are kept sorted descending, complex
//! lists keep conjugate pairs adjacent.  This is the common input type for
//! every checker and constructor in the crate.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use num_complex::Complex;
use num_traits::Float;

use crate::scalar::{negligible, FieldElem, Scalar};
use crate::{tol, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<S: Scalar> {
    /// Normalized values: λ₁ first, the rest sorted by (Re desc, |Im| asc, Im desc).
    pub values: Vec<Complex<S>>,
    /// Position of λ₁ after normalization (always 0).
    pub perron_index: usize,
    /// For real lists: greatest 1-based index j with λⱼ ≥ 0.  `None` otherwise.
    pub p_index: Option<usize>,
    /// m = max_{j≥2} |λⱼ|.  `None` when the exact backend cannot represent the
    /// modulus (irrational square root); the float backend always stores it.
    pub tail_max: Option<S>,
}

/// Elementary symmetric functions e₀,…,eₙ of a spectrum, all real after the
/// conjugate-closure check.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricFunctions<S: Scalar> {
    pub e: Vec<S>,
}

/// An upper bound δ for the least Perron shift making a list certified
/// realizable, together with the certifying criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct Negativity<S: Scalar> {
    pub value: S,
    pub witness: String,
}

impl<S: Scalar> Spectrum<S> {
    pub fn normalize(raw: &[Complex<S>]) -> Result<Self> {
        Self::normalize_with_tol(raw, tol::COEFF)
    }

    pub fn from_reals(raw: &[S]) -> Result<Self> {
        let values: Vec<Complex<S>> = raw
            .iter()
            .map(|v| Complex::new(v.clone(), S::zero()))
            .collect();
        Self::normalize(&values)
    }

    pub fn normalize_with_tol(raw: &[Complex<S>], tolerance: f64) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput("spectrum needs at least one value".into()));
        }
        let n = raw.len();
        let scale = raw.iter().map(|z| z.norm1()).fold(0.0f64, f64::max);

        // Conjugate closure: every value must pair with its conjugate
        // (self-pairing for real values), as multisets.
        let mut matched = vec![false; n];
        for i in 0..n {
            if matched[i] {
                continue;
            }
            let want = raw[i].conj_elem();
            if close_to(&raw[i], &want, tolerance, scale) {
                matched[i] = true;
                continue;
            }
            let partner = (0..n)
                .find(|&j| j != i && !matched[j] && close_to(&raw[j], &want, tolerance, scale));
            match partner {
                Some(j) => {
                    matched[i] = true;
                    matched[j] = true;
                }
                None => {
                    return Err(Error::NotConjugateClosed(format!(
                        "no conjugate partner for value #{i}"
                    )))
                }
            }
        }

        // Perron candidate: a real value r with r ≥ 0 and r ≥ |λⱼ| for all j.
        let slack = tolerance * scale.max(1.0);
        let mut best: Option<usize> = None;
        for (i, z) in raw.iter().enumerate() {
            if !negligible(&z.im, tolerance, scale) {
                continue;
            }
            match best {
                Some(b) if raw[b].re >= z.re => {}
                _ => best = Some(i),
            }
        }
        let perron = best.ok_or_else(|| {
            Error::NoPerronCandidate("list contains no real value".into())
        })?;
        let r = raw[perron].re.clone();
        if r.is_negative() && !negligible(&r, tolerance, scale) {
            return Err(Error::NoPerronCandidate(format!(
                "maximal real value {r} is negative"
            )));
        }
        for z in raw {
            let modulus_sq = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
            let r_sq = r.clone() * r.clone();
            let ok = if S::EXACT {
                r_sq >= modulus_sq
            } else {
                r.to_f64() + slack >= Float::sqrt(modulus_sq.to_f64().max(0.0))
            };
            if !ok {
                return Err(Error::NoPerronCandidate(format!(
                    "no real value dominates modulus of {}+{}i",
                    z.re, z.im
                )));
            }
        }

        // λ₁ first, remaining values sorted with conjugate pairs adjacent
        // (positive imaginary part first).  Stable sort keeps input order on ties.
        let mut rest: Vec<Complex<S>> = raw
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != perron)
            .map(|(_, z)| z.clone())
            .collect();
        rest.sort_by(|a, b| {
            b.re.partial_cmp(&a.re)
                .unwrap_or(core::cmp::Ordering::Equal)
                .then_with(|| {
                    a.im.abs()
                        .partial_cmp(&b.im.abs())
                        .unwrap_or(core::cmp::Ordering::Equal)
                })
                .then_with(|| {
                    b.im.partial_cmp(&a.im).unwrap_or(core::cmp::Ordering::Equal)
                })
        });
        let mut values = Vec::with_capacity(n);
        values.push(raw[perron].clone());
        values.extend(rest);

        let all_real = values.iter().all(|z| negligible(&z.im, tolerance, scale));
        let p_index = if all_real {
            Some(values.iter().filter(|z| !z.re.is_negative()).count())
        } else {
            None
        };

        let tail_max = tail_modulus_max(&values[1..]);

        Ok(Spectrum {
            values,
            perron_index: 0,
            p_index,
            tail_max,
        })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn perron(&self) -> S {
        self.values[0].re.clone()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im.is_zero())
    }

    /// Real parts, in order, when the list is real.
    pub fn reals(&self) -> Option<Vec<S>> {
        if self.is_real() {
            Some(self.values.iter().map(|z| z.re.clone()).collect())
        } else {
            None
        }
    }

    pub fn tail(&self) -> &[Complex<S>] {
        &self.values[1..]
    }

    pub fn sum(&self) -> Complex<S> {
        self.values
            .iter()
            .fold(Complex::new(S::zero(), S::zero()), |acc, z| acc + z.clone())
    }

    /// Real part of the sum; the imaginary part vanishes for closed lists.
    pub fn real_sum(&self) -> S {
        self.sum().re
    }
}

fn close_to<S: Scalar>(a: &Complex<S>, b: &Complex<S>, tolerance: f64, scale: f64) -> bool {
    let d = a.clone() - b.clone();
    negligible(&d.re, tolerance, scale) && negligible(&d.im, tolerance, scale)
}

fn tail_modulus_max<S: Scalar>(tail: &[Complex<S>]) -> Option<S> {
    if tail.is_empty() {
        return Some(S::zero());
    }
    if tail.iter().all(|z| z.im.is_zero()) {
        let mut m = S::zero();
        for z in tail {
            let a = z.re.abs();
            if a > m {
                m = a;
            }
        }
        return Some(m);
    }
    let mut msq = S::zero();
    for z in tail {
        let q = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
        if q > msq {
            msq = q;
        }
    }
    msq.sqrt_exact()
}

/// Whether the multiset is closed under conjugation within the tolerance;
/// values with negligible imaginary part self-match.
pub fn conjugate_closed<S: Scalar>(values: &[Complex<S>], tolerance: f64) -> bool {
    let scale = values.iter().map(|z| z.norm1()).fold(1.0f64, f64::max);
    let mut unmatched: Vec<&Complex<S>> = Vec::new();
    for z in values {
        if negligible(&z.im, tolerance, scale) {
            continue;
        }
        let conj = Complex::new(z.re.clone(), S::zero() - z.im.clone());
        if let Some(k) = unmatched
            .iter()
            .position(|w| close_to(w, &conj, tolerance, scale))
        {
            unmatched.swap_remove(k);
        } else {
            unmatched.push(z);
        }
    }
    unmatched.is_empty()
}

/// e₀,…,eₙ by inserting one root at a time: inserting r maps
/// eₖ ← eₖ + r·eₖ₋₁ from the top down.
pub fn elementary_symmetric<T: FieldElem>(roots: &[T]) -> Vec<T> {
    let n = roots.len();
    let mut e: Vec<T> = Vec::with_capacity(n + 1);
    e.push(T::one());
    for _ in 0..n {
        e.push(T::zero());
    }
    for (k, r) in roots.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let add = r.clone() * e[j - 1].clone();
            e[j] = e[j].clone() + add;
        }
    }
    e
}

/// Symmetric functions of a closed spectrum; imaginary residue beyond
/// tolerance is an internal error since closure was already validated.
pub fn symmetric_functions<S: Scalar>(s: &Spectrum<S>) -> Result<SymmetricFunctions<S>> {
    let ec = elementary_symmetric(&s.values);
    let scale = ec.iter().map(|z| z.norm1()).fold(1.0f64, f64::max);
    let mut e = Vec::with_capacity(ec.len());
    for z in ec {
        if !negligible(&z.im, tol::COEFF, scale) {
            return Err(Error::InternalConstructionError(format!(
                "symmetric function has imaginary residue {}",
                z.im
            )));
        }
        e.push(z.re);
    }
    Ok(SymmetricFunctions { e })
}

/// Least grid multiple δ for which `certify` accepts {λ₁+δ, λ₂, …, λₙ}.
///
/// `certify` returns the name of an accepting procedure, or `None`.  The
/// certified set is upward closed in δ (shifting the Perron root preserves
/// every implemented criterion), so doubling then bisection over grid indices
/// is sound.  The search is capped just past (n−1)·m, where the scaled
/// all-column-compensation constructor always succeeds.
pub fn negativity_upper_bound_with<S, F>(s: &Spectrum<S>, certify: F) -> Result<Negativity<S>>
where
    S: Scalar,
    F: Fn(&Spectrum<S>) -> Option<String>,
{
    let shifted = |delta: &S| -> Result<Spectrum<S>> {
        let mut values = s.values.clone();
        values[0].re = values[0].re.clone() + delta.clone();
        Spectrum::normalize(&values)
    };
    let check = |delta: &S| -> Result<Option<String>> { Ok(certify(&shifted(delta)?)) };

    if let Some(witness) = check(&S::zero())? {
        return Ok(Negativity {
            value: S::zero(),
            witness,
        });
    }

    let n = s.order();
    let lam1 = s.perron();
    let mut step = S::from_ratio(1, 1024);
    if lam1.abs() > S::one() {
        step = step * lam1.abs();
    }
    let m = s
        .tail_max
        .clone()
        .unwrap_or_else(|| S::from_int(2) * max_norm1_tail(s));
    let cap = S::from_int(n as i64 - 1) * m + step.clone();

    // Exponential bracketing over grid indices 2^t.
    let mut hi: u64 = 1;
    let mut hi_witness;
    loop {
        let delta = step.clone() * S::from_int(hi as i64);
        if delta > cap {
            return Err(Error::BoundNotFound(format!(
                "no criterion certified any shift up to {delta}"
            )));
        }
        if let Some(w) = check(&delta)? {
            hi_witness = w;
            break;
        }
        hi = hi * 2;
    }
    let mut lo: u64 = hi / 2; // not certified (zero index handled above)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let delta = step.clone() * S::from_int(mid as i64);
        match check(&delta)? {
            Some(w) => {
                hi = mid;
                hi_witness = w;
            }
            None => lo = mid,
        }
    }
    Ok(Negativity {
        value: step * S::from_int(hi as i64),
        witness: hi_witness,
    })
}

fn max_norm1_tail<S: Scalar>(s: &Spectrum<S>) -> S {
    let mut m = S::zero();
    for z in s.tail() {
        let a = z.re.abs() + z.im.abs();
        if a > m {
            m = a;
        }
    }
    m
}

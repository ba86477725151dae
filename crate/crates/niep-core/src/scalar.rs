//! Scalar backends: exact big rationals and double floats, plus the field
//! abstraction used by the elimination routines (which must also handle
//! complex entries).

use core::fmt::{Debug, Display};
use core::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, Num, Signed, ToPrimitive, Zero};

/// A real scalar the constructions are generic over.
///
/// `EXACT` distinguishes the rational backend (comparisons demand equality)
/// from the float backend (comparisons use the crate tolerances).
pub trait Scalar: FieldElem + PartialOrd + Display {
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn abs(&self) -> Self;

    /// Nearest double, used for pivot selection, tolerances and display.
    fn to_f64(&self) -> f64;

    /// Exact square root when one exists in the backend.
    ///
    /// The float backend always answers (with the usual rounding); the
    /// rational backend answers only for perfect squares.
    fn sqrt_exact(&self) -> Option<Self>;

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn abs(&self) -> Self {
        Float::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(Float::sqrt(*self))
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let num = self.numer();
        let den = self.denom();
        let rn = num.sqrt();
        let rd = den.sqrt();
        if &(&rn * &rn) == num && &(&rd * &rd) == den {
            Some(BigRational::new(rn, rd))
        } else {
            None
        }
    }
}

/// An element of a field the elimination code can run over: the two real
/// backends and their complexifications.
pub trait FieldElem: Num + Clone + Neg<Output = Self> + Debug + Send + Sync + 'static {
    const EXACT_ELEM: bool;

    /// Magnitude proxy for pivot selection (1-norm of the real pair).
    fn norm1(&self) -> f64;

    fn conj_elem(&self) -> Self;
}

impl FieldElem for f64 {
    const EXACT_ELEM: bool = false;

    fn norm1(&self) -> f64 {
        Float::abs(*self)
    }

    fn conj_elem(&self) -> Self {
        *self
    }
}

impl FieldElem for BigRational {
    const EXACT_ELEM: bool = true;

    fn norm1(&self) -> f64 {
        Scalar::to_f64(&Scalar::abs(self))
    }

    fn conj_elem(&self) -> Self {
        self.clone()
    }
}

impl<S: Scalar> FieldElem for Complex<S> {
    const EXACT_ELEM: bool = S::EXACT;

    fn norm1(&self) -> f64 {
        self.re.abs().to_f64() + self.im.abs().to_f64()
    }

    fn conj_elem(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

/// True when `x` may be treated as zero: exactly zero for the exact backend,
/// within `tol * max(1, scale)` for floats.
pub fn negligible<S: Scalar>(x: &S, tol: f64, scale: f64) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.to_f64().abs() <= tol * scale.max(1.0)
    }
}

/// Complex counterpart of [`negligible`], applied to both components.
pub fn negligible_c<S: Scalar>(x: &Complex<S>, tol: f64, scale: f64) -> bool {
    negligible(&x.re, tol, scale) && negligible(&x.im, tol, scale)
}

/// Embeds a real scalar into the complex plane.
pub fn complexify<S: Scalar>(x: &S) -> Complex<S> {
    Complex::new(x.clone(), S::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_sqrt_exact_hits_perfect_squares() {
        assert_eq!(q(9, 4).sqrt_exact(), Some(q(3, 2)));
        assert_eq!(q(0, 1).sqrt_exact(), Some(q(0, 1)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 1).sqrt_exact(), None);
        assert_eq!(q(49, 36).sqrt_exact(), Some(q(7, 6)));
    }

    #[test]
    fn float_backend_round_trips() {
        assert_eq!(f64::from_ratio(3, 4), 0.75);
        assert_eq!(Scalar::abs(&-2.5f64), 2.5);
        assert_eq!((2.25f64).sqrt_exact(), Some(1.5));
        assert!((-1.0f64).sqrt_exact().is_none());
    }

    #[test]
    fn negligible_is_exact_for_rationals() {
        assert!(negligible(&q(0, 1), 1e-9, 1.0));
        assert!(!negligible(&q(1, 1_000_000_000_000), 1e-9, 1.0));
        assert!(negligible(&1e-12f64, 1e-9, 1.0));
        assert!(!negligible(&1e-6f64, 1e-9, 1.0));
    }

    #[test]
    fn complex_norm1_sums_components() {
        let z = Complex::new(-3.0f64, 4.0);
        assert_eq!(z.norm1(), 7.0);
        assert_eq!(z.conj_elem(), Complex::new(-3.0, -4.0));
    }
}

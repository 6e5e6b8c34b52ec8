//! Scalar abstraction shared by the density products, the Selberg quadratic
//! form and the Rosser density identities.
//!
//! Every routine that only needs field operations is written against
//! [`Scalar`], so the same code runs in exact rational arithmetic (used by the
//! identity suites) and in `f64`/`f32` (used for large-scale bounds).

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// A field element usable by the sieve algebra.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> {
    /// `true` when arithmetic is exact, so identities are compared with `==`.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_u64(n: u64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn from_small(r: &Rational64) -> Self {
        Self::from_ratio(*r.numer(), *r.denom())
    }

    /// Equality for exact types, `1e-9` relative agreement for floats.
    fn agrees_with(&self, other: &Self) -> bool {
        if Self::EXACT {
            return self == other;
        }
        let a = self.to_f64();
        let b = other.to_f64();
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= 1e-9 * scale
    }

    fn pow_u32(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn from_u64(n: u64) -> Self {
        n as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r) as f32
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn agrees_with(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= 1e-5 * scale
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// Converts a big rational to the nearest representable `f64`, even when
/// numerator and denominator individually overflow.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    if r.is_zero() {
        return 0.0;
    }
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let scaled = if shift > 0 {
        r / BigRational::from_integer(BigInt::one() << (shift as usize))
    } else {
        r * BigRational::from_integer(BigInt::one() << ((-shift) as usize))
    };
    ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite value")
}

pub fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_conversion_survives_huge_parts() {
        let huge = BigInt::from(3u8).pow(900);
        let r = BigRational::new(huge.clone() * 2, huge);
        assert_eq!(rational_to_f64(&r), 2.0);
    }

    #[test]
    fn f64_agreement_is_relative() {
        assert!(1e12f64.agrees_with(&(1e12 + 1e2)));
        assert!(!1.0f64.agrees_with(&1.001));
        assert!(big(3).agrees_with(&BigRational::from_ratio(6, 2)));
    }
}

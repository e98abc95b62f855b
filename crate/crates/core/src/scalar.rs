//! Scalar abstraction shared by the exact and floating point code paths.
//!
//! Every decision procedure in this crate runs on [`BigRational`]; the same
//! generic routines are instantiated with `f64` for rendering and diagnostics.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, ToPrimitive};

/// A field element usable by the generic 2×2 linear algebra.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    fn as_f64(&self) -> f64;

    /// Exact types return `true`; equality tests on them are decisions.
    const EXACT: bool;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    const EXACT: bool = false;
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
    const EXACT: bool = false;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn as_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    const EXACT: bool = true;
}

impl Scalar for Rational64 {
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }
    fn as_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    const EXACT: bool = true;
}

/// Converts a big rational to the nearest-ish `f64`, staying finite for huge
/// numerators and denominators by shifting both first.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer();
    let d = r.denom();
    let shift = (n.bits().max(d.bits())).saturating_sub(1000);
    let ns = n >> shift;
    let ds = d >> shift;
    ToPrimitive::to_f64(&ns).unwrap_or(f64::NAN) / ToPrimitive::to_f64(&ds).unwrap_or(f64::NAN)
}

/// Shorthand for an integer-valued big rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_i64(n)
}

/// `n / d` as a big rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

//! Exact arithmetic in the number field `ℚ(β)` for a real algebraic `β`
//! given by its minimal polynomial and an isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    minpoly: Poly,
    lo: BigRational,
    hi: BigRational,
}

/// An element of `ℚ(β)`: a polynomial in `β` of degree below the field degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QBeta(Poly);

impl NumberField {
    /// Field generated by the largest real root of `p` (monic integral).
    pub fn largest_root_of(p: &Poly) -> Result<NumberField> {
        let (lo, hi) = p
            .isolate_largest_root(64)
            .ok_or_else(|| Error::OutOfRange("polynomial has no real root".into()))?;
        let minpoly = p.minimal_factor(&lo, &hi);
        Ok(NumberField { minpoly, lo, hi })
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree() as usize
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn beta_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    fn wrap(&self, p: Poly) -> QBeta {
        QBeta(p.rem(&self.minpoly))
    }

    pub fn from_rational(&self, x: BigRational) -> QBeta {
        QBeta(Poly::constant(x))
    }

    pub fn from_int(&self, n: i64) -> QBeta {
        QBeta(Poly::from_ints(&[n]))
    }

    pub fn zero(&self) -> QBeta {
        QBeta(Poly::zero())
    }

    pub fn one(&self) -> QBeta {
        self.from_int(1)
    }

    pub fn beta(&self) -> QBeta {
        self.wrap(Poly::x())
    }

    pub fn from_poly(&self, p: Poly) -> QBeta {
        self.wrap(p)
    }

    pub fn add(&self, a: &QBeta, b: &QBeta) -> QBeta {
        QBeta(a.0.add(&b.0))
    }

    pub fn sub(&self, a: &QBeta, b: &QBeta) -> QBeta {
        QBeta(a.0.sub(&b.0))
    }

    pub fn neg(&self, a: &QBeta) -> QBeta {
        QBeta(a.0.neg())
    }

    pub fn mul(&self, a: &QBeta, b: &QBeta) -> QBeta {
        self.wrap(a.0.mul(&b.0))
    }

    pub fn scale(&self, a: &QBeta, k: &BigRational) -> QBeta {
        QBeta(a.0.scale(k))
    }

    pub fn inv(&self, a: &QBeta) -> Result<QBeta> {
        if a.is_zero() {
            return Err(Error::OutOfRange("inverse of zero in ℚ(β)".into()));
        }
        let (g, s) = a.0.gcd_ext_mod(&self.minpoly);
        if g.degree() != 0 {
            return Err(Error::OutOfRange(format!("minimal polynomial {} is reducible", self.minpoly)));
        }
        Ok(self.wrap(s))
    }

    pub fn div(&self, a: &QBeta, b: &QBeta) -> Result<QBeta> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &QBeta, mut e: u32) -> QBeta {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Sign of the real number `a(β)`. Representatives are reduced modulo the
    /// minimal polynomial, so only the zero polynomial represents zero.
    pub fn signum(&self, a: &QBeta) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let two = BigRational::from_integer(2.into());
        let f_lo_sign = self.minpoly.eval(&hi).signum();
        loop {
            let (l, h) = a.0.eval_interval(&lo, &hi);
            if l.is_positive() {
                return Ordering::Greater;
            }
            if h.is_negative() {
                return Ordering::Less;
            }
            // bisect keeping the root of the squarefree minimal polynomial
            let mid = (&lo + &hi) / &two;
            let fm = self.minpoly.eval(&mid);
            if fm.is_zero() {
                return a.0.eval(&mid).signum().cmp_zero();
            }
            if fm.signum() == f_lo_sign {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    pub fn cmp(&self, a: &QBeta, b: &QBeta) -> Ordering {
        self.signum(&self.sub(a, b))
    }

    pub fn to_f64(&self, a: &QBeta) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        a.0.eval(&mid).to_f64().unwrap_or(f64::NAN)
    }

    /// A rational enclosure of `a(β)` of width below `2^-bits`.
    pub fn enclose(&self, a: &QBeta, bits: u32) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let two = BigRational::from_integer(2.into());
        let f_hi = self.minpoly.eval(&hi).signum();
        loop {
            let (l, h) = a.0.eval_interval(&lo, &hi);
            if &h - &l < eps {
                return (l, h);
            }
            let mid = (&lo + &hi) / &two;
            let fm = self.minpoly.eval(&mid);
            if fm.is_zero() {
                let v = a.0.eval(&mid);
                return (v.clone(), v);
            }
            if fm.signum() == f_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
}

trait CmpZero {
    fn cmp_zero(&self) -> Ordering;
}

impl CmpZero for BigRational {
    fn cmp_zero(&self) -> Ordering {
        self.cmp(&BigRational::zero())
    }
}

impl QBeta {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    /// Rational coefficients, lowest power of `β` first, padded to `degree`.
    pub fn coeffs(&self, degree: usize) -> Vec<BigRational> {
        (0..degree).map(|i| self.0.coeff(i)).collect()
    }
}

impl fmt::Display for QBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string().replace('x', "β"))
    }
}

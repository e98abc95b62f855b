//! Small fixed-size linear algebra over any [`Scalar`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A column vector in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(S::zero(), S::zero())
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(S::from_i64(x), S::from_i64(y))
    }

    /// The digit vector `(a, 0)`.
    pub fn digit(a: u32) -> Self {
        Vec2::new(S::from_i64(a as i64), S::zero())
    }

    pub fn scale(&self, k: &S) -> Self {
        Vec2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.x.as_f64(), self.y.as_f64()]
    }

    /// Converts between scalar types through `f64`; only meaningful towards
    /// floating point targets.
    pub fn cast<T: Scalar>(&self) -> Vec2<T>
    where
        T: From<f64>,
    {
        Vec2::new(T::from(self.x.as_f64()), T::from(self.y.as_f64()))
    }
}

impl<S: Scalar> Add for Vec2<S> {
    type Output = Vec2<S>;
    fn add(self, o: Vec2<S>) -> Vec2<S> {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl<'a, S: Scalar> Add<&'a Vec2<S>> for &'a Vec2<S> {
    type Output = Vec2<S>;
    fn add(self, o: &Vec2<S>) -> Vec2<S> {
        Vec2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }
}

impl<S: Scalar> Sub for Vec2<S> {
    type Output = Vec2<S>;
    fn sub(self, o: Vec2<S>) -> Vec2<S> {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl<'a, S: Scalar> Sub<&'a Vec2<S>> for &'a Vec2<S> {
    type Output = Vec2<S>;
    fn sub(self, o: &Vec2<S>) -> Vec2<S> {
        Vec2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }
}

impl<S: Scalar> Neg for Vec2<S> {
    type Output = Vec2<S>;
    fn neg(self) -> Vec2<S> {
        Vec2::new(-self.x, -self.y)
    }
}

impl<S: fmt::Display> fmt::Display for Vec2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A 2×2 matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2<S> {
    pub m: [[S; 2]; 2],
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2::new(
            S::from_i64(m[0][0]),
            S::from_i64(m[0][1]),
            S::from_i64(m[1][0]),
            S::from_i64(m[1][1]),
        )
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn det(&self) -> S {
        let [[a, b], [c, d]] = &self.m;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn trace(&self) -> S {
        self.m[0][0].clone() + self.m[1][1].clone()
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let [[a, b], [c, d]] = &self.m;
        Some(Mat2::new(
            d.clone() / det.clone(),
            -b.clone() / det.clone(),
            -c.clone() / det.clone(),
            a.clone() / det,
        ))
    }

    pub fn mul_vec(&self, v: &Vec2<S>) -> Vec2<S> {
        let [[a, b], [c, d]] = &self.m;
        Vec2::new(
            a.clone() * v.x.clone() + b.clone() * v.y.clone(),
            c.clone() * v.x.clone() + d.clone() * v.y.clone(),
        )
    }

    pub fn mul(&self, o: &Mat2<S>) -> Mat2<S> {
        let p = |i: usize, j: usize| {
            self.m[i][0].clone() * o.m[0][j].clone() + self.m[i][1].clone() * o.m[1][j].clone()
        };
        Mat2::new(p(0, 0), p(0, 1), p(1, 0), p(1, 1))
    }

    pub fn sub(&self, o: &Mat2<S>) -> Mat2<S> {
        let p = |i: usize, j: usize| self.m[i][j].clone() - o.m[i][j].clone();
        Mat2::new(p(0, 0), p(0, 1), p(1, 0), p(1, 1))
    }

    pub fn neg(&self) -> Mat2<S> {
        let p = |i: usize, j: usize| -self.m[i][j].clone();
        Mat2::new(p(0, 0), p(0, 1), p(1, 0), p(1, 1))
    }

    pub fn pow(&self, mut e: u32) -> Mat2<S> {
        let mut base = self.clone();
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Solves `self · x = rhs`; `None` when singular.
    pub fn solve(&self, rhs: &Vec2<S>) -> Option<Vec2<S>> {
        Some(self.inverse()?.mul_vec(rhs))
    }
}

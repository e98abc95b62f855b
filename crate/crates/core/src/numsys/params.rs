use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::scalar::Scalar;

/// An integer matrix together with the generator of a collinear digit set
/// `{0, v, 2v, …, (B−1)v}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInstance {
    pub m0: [[i64; 2]; 2],
    pub v: [i64; 2],
}

impl RawInstance {
    pub fn new(m0: [[i64; 2]; 2], v: [i64; 2]) -> Self {
        RawInstance { m0, v }
    }

    /// Coefficients `(A, B)` of the characteristic polynomial `x² + Ax + B`.
    pub fn char_poly(&self) -> (i64, i64) {
        let tr = self.m0[0][0] + self.m0[1][1];
        let det = self.m0[0][0] * self.m0[1][1] - self.m0[0][1] * self.m0[1][0];
        (-tr, det)
    }

    /// The basis change `C = [v | M₀v]`.
    pub fn basis_change(&self) -> [[i64; 2]; 2] {
        let [[a, b], [c, d]] = self.m0;
        let [vx, vy] = self.v;
        let mv = [a * vx + b * vy, c * vx + d * vy];
        [[vx, mv[0]], [vy, mv[1]]]
    }
}

/// Normalized parameters `0 ≤ A ≤ B`, `B ≥ 2`. The tile is the attractor of
/// the companion matrix `M = [[0, −B], [1, −A]]` with digits `(0,0) … (B−1,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TileParams {
    pub a: i64,
    pub b: i64,
    /// Set when the input had `A < 0` and was mapped by the reflection.
    pub reflected: bool,
}

impl TileParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b < 2 {
            return Err(Error::BadDeterminant(b));
        }
        if a < 0 {
            return Err(Error::OutOfRange(format!("A = {a} < 0; normalize the instance first")));
        }
        if a > b {
            return Err(Error::NotExpanding { a, b });
        }
        Ok(TileParams { a, b, reflected: false })
    }

    /// Number of digits, `B`.
    pub fn base(&self) -> u32 {
        self.b as u32
    }

    /// The largest digit `B − 1`.
    pub fn max_digit(&self) -> u32 {
        (self.b - 1) as u32
    }

    /// `2A − B`, the quantity driving the topological classification.
    pub fn excess(&self) -> i64 {
        2 * self.a - self.b
    }

    pub fn companion<S: Scalar>(&self) -> Mat2<S> {
        Mat2::from_ints([[0, -self.b], [1, -self.a]])
    }

    /// `M⁻¹ = (1/B)·[[−A, B], [−1, 0]]`.
    pub fn companion_inverse<S: Scalar>(&self) -> Mat2<S> {
        let b = S::from_i64(self.b);
        Mat2::new(
            S::from_i64(-self.a) / b.clone(),
            S::one(),
            S::from_i64(-1) / b,
            S::zero(),
        )
    }

    /// Integer image `M·s`.
    pub fn mul_int(&self, s: [i64; 2]) -> [i64; 2] {
        [-self.b * s[1], s[0] - self.a * s[1]]
    }

    pub fn check_digit(&self, d: u32) -> Result<()> {
        if (d as i64) < self.b {
            Ok(())
        } else {
            Err(Error::InvalidDigit { digit: d, b: self.b })
        }
    }
}

/// The affinity relating a raw instance to its normalized companion form.
///
/// A normalized tile point `x` corresponds to the raw tile point
/// `C·(P·x + t)` where `C = basis_change`, `P = reflection` and
/// `t = translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineNormalization {
    pub basis_change: [[i64; 2]; 2],
    pub reflection: [[i64; 2]; 2],
    pub translation: Vec2<BigRational>,
}

impl AffineNormalization {
    /// Maps a point of the normalized tile onto the raw tile.
    pub fn apply(&self, x: &Vec2<BigRational>) -> Vec2<BigRational> {
        let c: Mat2<BigRational> = Mat2::from_ints(self.basis_change);
        let p: Mat2<BigRational> = Mat2::from_ints(self.reflection);
        c.mul_vec(&(p.mul_vec(x) + self.translation.clone()))
    }
}

/// Brings a raw instance to companion form with `0 ≤ A ≤ B`.
pub fn normalize(raw: &RawInstance) -> Result<(TileParams, AffineNormalization)> {
    let (a_in, b) = raw.char_poly();
    if b < 2 {
        return Err(Error::BadDeterminant(b));
    }
    if a_in.abs() > b {
        return Err(Error::NotExpanding { a: a_in, b });
    }
    let c = raw.basis_change();
    if c[0][0] * c[1][1] - c[0][1] * c[1][0] == 0 {
        return Err(Error::DegenerateBasis);
    }
    let a = a_in.abs();
    let mut params = TileParams::new(a, b)?;
    let (reflection, translation) = if a_in < 0 {
        params.reflected = true;
        (
            [[1, 0], [0, -1]],
            reflection_translation(a, b),
        )
    } else {
        ([[1, 0], [0, 1]], Vec2::zero())
    };
    Ok((
        params,
        AffineNormalization { basis_change: c, reflection, translation },
    ))
}

/// The translation `Σ_{i≥0} M₂^{−2i−1}(B−1, 0)ᵀ` for `M₂ = [[0, −B], [1, A]]`,
/// obtained from `(M₂² − I)·t = M₂·(B−1, 0)ᵀ`.
pub fn reflection_translation(a: i64, b: i64) -> Vec2<BigRational> {
    let m2: Mat2<BigRational> = Mat2::from_ints([[0, -b], [1, a]]);
    let lhs = m2.mul(&m2).sub(&Mat2::identity());
    let rhs = m2.mul_vec(&Vec2::from_ints(b - 1, 0));
    lhs.solve(&rhs).expect("M₂² − I is invertible for expanding M₂")
}

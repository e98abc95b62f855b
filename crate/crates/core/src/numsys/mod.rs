//! The matrix number system `(M, 𝒟)`: parameters, normalization, digit
//! addresses and their exact evaluation.

mod address;
pub(crate) use address::canonical_tail;
mod params;

pub use address::{Address, Digit, DigitWord};
pub use params::{normalize, reflection_translation, AffineNormalization, RawInstance, TileParams};

use crate::linalg::{Mat2, Vec2};
use crate::scalar::Scalar;

/// Evaluates `Σ M^{−i}(aᵢ, 0)ᵀ` (including the integer part) exactly for
/// exact scalar types.
///
/// The periodic tail `x` is the solution of
/// `(M^p − I)·x = Σ_{i=1..p} M^{p−i}(cᵢ, 0)ᵀ`.
pub fn point_eval<S: Scalar>(addr: &Address, params: &TileParams) -> Vec2<S> {
    let m: Mat2<S> = params.companion();
    let m_inv: Mat2<S> = params.companion_inverse();
    let period = addr.period().digits();
    let p = period.len() as u32;
    let mut rhs = Vec2::zero();
    for &c in period {
        rhs = m.mul_vec(&rhs) + Vec2::digit(c);
    }
    let lhs = m.pow(p).sub(&Mat2::identity());
    let mut v = lhs.solve(&rhs).expect("M^p − I is invertible for expanding M");
    for &b in addr.preperiod().digits().iter().rev() {
        v = m_inv.mul_vec(&(v + Vec2::digit(b)));
    }
    let mut w = Vec2::zero();
    for &a in addr.integer_part().digits() {
        w = m.mul_vec(&w) + Vec2::digit(a);
    }
    w + v
}

/// Exact value of a finite fractional word `0.a₁…a_m` (all further digits 0).
pub fn word_eval<S: Scalar>(word: &[u32], params: &TileParams) -> Vec2<S> {
    let m_inv: Mat2<S> = params.companion_inverse();
    let mut v = Vec2::zero();
    for &b in word.iter().rev() {
        v = m_inv.mul_vec(&(v + Vec2::digit(b)));
    }
    v
}

/// Exchanges every digit `a ↔ B − 1 − a`.
pub fn flip(addr: &Address, params: &TileParams) -> Address {
    let f = |w: &DigitWord| -> Vec<u32> {
        w.digits().iter().map(|&a| params.max_digit() - a).collect()
    };
    Address::new(f(addr.integer_part()), f(addr.preperiod()), f(addr.period()))
        .expect("flip keeps the period nonempty")
}

/// `a^{(n)}`: the digit itself for even `n`, its flip `B − 1 − a` for odd `n`.
pub fn alt_flip(n: i64, a: Digit, params: &TileParams) -> Digit {
    if n.rem_euclid(2) == 0 {
        a
    } else {
        Digit(params.max_digit() - a.0)
    }
}

/// The contraction `f_a(x) = M⁻¹(x + (a, 0)ᵀ)`.
pub fn apply_contraction<S: Scalar>(a: Digit, p: &Vec2<S>, params: &TileParams) -> Vec2<S> {
    let m_inv: Mat2<S> = params.companion_inverse();
    m_inv.mul_vec(&(p.clone() + Vec2::digit(a.0)))
}

/// `0.(B−1)̄`, the point fixed by the flip symmetry `x ↦ c − x`.
pub fn flip_center<S: Scalar>(params: &TileParams) -> Vec2<S> {
    let top = Address::purely_periodic(vec![params.max_digit()]).expect("nonempty");
    point_eval(&top, params)
}

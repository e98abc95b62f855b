//! Exact topology of planar integral self-affine tiles with a collinear
//! digit set `{0, v, …, (B−1)v}` and an expanding matrix with
//! characteristic polynomial `x² + Ax + B`.
//!
//! The crate computes neighbor sets, the contact graph with its ordered
//! extension and boundary parametrization, cut-point certificates through a
//! product ω-automaton, and machine checks of the chain structure used to
//! show the absence of cut points when `2A − B = 3`.

pub mod automaton;
pub mod chains;
pub mod contact;
pub mod error;
pub mod linalg;
pub mod neighbors;
pub mod numsys;
pub mod poly;
pub mod qbeta;
pub mod render;
pub mod scalar;
pub mod topology;

pub use error::{Error, Result};
pub use linalg::{Mat2, Vec2};
pub use numsys::{Address, Digit, DigitWord, TileParams};

use num_rational::BigRational;

/// An exact point of the plane.
pub type RationalPoint = Vec2<BigRational>;
/// A floating point point, used for rendering and diagnostics only.
pub type FloatPoint = Vec2<f64>;
/// Exact 2×2 matrix.
pub type RationalMat = Mat2<BigRational>;

//! The neighbor set `𝒮 = {s ∈ ℤ² ∖ {0} : 𝒯 ∩ (𝒯 + s) ≠ ∅}`, computed by the
//! closed formula and, independently, by trimming the difference graph on a
//! certified candidate box.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::numsys::{Address, DigitWord, TileParams};
use crate::scalar::Scalar;

/// An integer translation vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NeighborVector(pub [i64; 2]);

impl NeighborVector {
    pub fn x(self) -> i64 {
        self.0[0]
    }
    pub fn y(self) -> i64 {
        self.0[1]
    }
    pub fn neg(self) -> Self {
        NeighborVector([-self.0[0], -self.0[1]])
    }
}

// Sorted lexicographically by (y, x).
impl Ord for NeighborVector {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.0[1], self.0[0]).cmp(&(o.0[1], o.0[0]))
    }
}

impl PartialOrd for NeighborVector {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborSet {
    /// Members sorted by `(y, x)`.
    pub members: Vec<NeighborVector>,
    pub j: i64,
}

impl NeighborSet {
    fn from_set(set: BTreeSet<NeighborVector>, j: i64) -> Self {
        NeighborSet { members: set.into_iter().collect(), j }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: [i64; 2]) -> bool {
        self.members.binary_search(&NeighborVector(s)).is_ok()
    }

    /// `s ∈ 𝒮 ∪ {0}`.
    pub fn contains_or_zero(&self, s: [i64; 2]) -> bool {
        s == [0, 0] || self.contains(s)
    }

    pub fn is_symmetric(&self) -> bool {
        self.members.iter().all(|s| self.contains(s.neg().0))
    }

    /// Maps every member through an integer matrix (used for reflected
    /// instances, where neighbor vectors transform covariantly).
    pub fn transformed(&self, m: [[i64; 2]; 2]) -> NeighborSet {
        let set = self
            .members
            .iter()
            .map(|s| {
                NeighborVector([
                    m[0][0] * s.x() + m[0][1] * s.y(),
                    m[1][0] * s.x() + m[1][1] * s.y(),
                ])
            })
            .collect();
        NeighborSet::from_set(set, self.j)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "cnstile.neighbors/v1",
            "j": self.j,
            "count": self.len(),
            "members": self.members.iter().map(|s| [s.x(), s.y()]).collect::<Vec<_>>(),
        })
    }
}

/// `J = max{1, ⌊(B−1)/(B−A+1)⌋}`.
pub fn neighbor_count_parameter(a: i64, b: i64) -> i64 {
    ((b - 1) / (b - a + 1)).max(1)
}

/// `P_n = (n − (n−1)A, −(n−1))`.
pub fn p_vec(n: i64, a: i64) -> [i64; 2] {
    [n - (n - 1) * a, -(n - 1)]
}

/// `Q_n = (−n + nA, n)`.
pub fn q_vec(n: i64, a: i64) -> [i64; 2] {
    [-n + n * a, n]
}

/// `R = (−A, −1)`.
pub fn r_vec(a: i64) -> [i64; 2] {
    [-a, -1]
}

/// The closed formula `𝒮 = {±P₁…±P_J, ±Q₁…±Q_J, ±R}`, valid for `A ≥ 1`.
pub fn neighbor_set_formula(params: &TileParams) -> Result<NeighborSet> {
    neighbor_set_formula_ab(params.a, params.b)
}

/// Formula entry point on bare coefficients. `A ≤ 0` is rejected: the
/// formula is not used there (`A = 0` is a rectangle with eight neighbors).
pub fn neighbor_set_formula_ab(a: i64, b: i64) -> Result<NeighborSet> {
    if a < 1 || a > b || b < 2 {
        return Err(Error::OutOfRange(format!(
            "neighbor formula needs 1 ≤ A ≤ B, B ≥ 2; got A = {a}, B = {b}"
        )));
    }
    let j = neighbor_count_parameter(a, b);
    let mut set = BTreeSet::new();
    for n in 1..=j {
        for v in [p_vec(n, a), q_vec(n, a)] {
            set.insert(NeighborVector(v));
            set.insert(NeighborVector([-v[0], -v[1]]));
        }
    }
    let r = r_vec(a);
    set.insert(NeighborVector(r));
    set.insert(NeighborVector([-r[0], -r[1]]));
    Ok(NeighborSet::from_set(set, j))
}

/// Axis-aligned box with rational bounds.
#[derive(Clone, Debug, PartialEq)]
struct RatBox {
    lo: [BigRational; 2],
    hi: [BigRational; 2],
}

fn norm_inf_mat(m: &Mat2<BigRational>) -> BigRational {
    (0..2)
        .map(|i| m.m[i][0].abs() + m.m[i][1].abs())
        .max()
        .expect("two rows")
}

fn round_down(x: &BigRational, den: &BigInt) -> BigRational {
    BigRational::new((x * BigRational::from_integer(den.clone())).floor().to_integer(), den.clone())
}

fn round_up(x: &BigRational, den: &BigInt) -> BigRational {
    BigRational::new((x * BigRational::from_integer(den.clone())).ceil().to_integer(), den.clone())
}

/// A certified box containing every integer point of `𝒯 − 𝒯`, i.e. every
/// `Σ_{i≥1} M^{−i}(dᵢ, 0)ᵀ` with `|dᵢ| ≤ B − 1`.
///
/// A power `k` with `‖M^{−k}‖_∞ ≤ 1/2` gives the initial radius
/// `2·(B−1)·Σ_{r≤k} ‖M^{−r}e₁‖_∞`. The box is then shrunk by intersecting it
/// with the hull of its image under the `k`-step difference IFS, rounding
/// outward to a dyadic grid.
pub fn difference_box(params: &TileParams) -> ([i64; 2], [i64; 2]) {
    let m_inv: Mat2<BigRational> = params.companion_inverse();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let dmax = BigRational::from_i64(params.b - 1);

    // smallest k with ‖M^{−k}‖_∞ ≤ 1/2, accumulating the column norms of M^{−r}e₁
    let mut pow = Mat2::identity();
    let mut col_spread = [BigRational::zero(), BigRational::zero()];
    let mut col_norm_sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        pow = pow.mul(&m_inv);
        k += 1;
        col_spread[0] += pow.m[0][0].abs() * &dmax;
        col_spread[1] += pow.m[1][0].abs() * &dmax;
        col_norm_sum += pow.m[0][0].abs().max(pow.m[1][0].abs());
        if norm_inf_mat(&pow) <= half || k > 4096 {
            break;
        }
    }
    assert!(k <= 4096, "M is expanding, so some power of M⁻¹ contracts");
    let radius = col_norm_sum * &dmax * BigRational::from_i64(2);
    let mut bx = RatBox {
        lo: [-radius.clone(), -radius.clone()],
        hi: [radius.clone(), radius],
    };
    let den = BigInt::from(1u64 << 20);
    for _ in 0..200 {
        // hull of M^{−k}·box + Σ_{r≤k} M^{−r}[−(B−1), B−1]e₁
        let mut lo = [BigRational::zero(), BigRational::zero()];
        let mut hi = [BigRational::zero(), BigRational::zero()];
        for i in 0..2 {
            for j in 0..2 {
                let c = &pow.m[i][j];
                let (a, b) = (c * &bx.lo[j], c * &bx.hi[j]);
                let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
                lo[i] += mn;
                hi[i] += mx;
            }
            lo[i] -= &col_spread[i];
            hi[i] += &col_spread[i];
        }
        let next = RatBox {
            lo: [
                round_down(&lo[0], &den).max(bx.lo[0].clone()),
                round_down(&lo[1], &den).max(bx.lo[1].clone()),
            ],
            hi: [
                round_up(&hi[0], &den).min(bx.hi[0].clone()),
                round_up(&hi[1], &den).min(bx.hi[1].clone()),
            ],
        };
        if next == bx {
            break;
        }
        bx = next;
    }
    let lo = [
        bx.lo[0].ceil().to_integer(),
        bx.lo[1].ceil().to_integer(),
    ];
    let hi = [
        bx.hi[0].floor().to_integer(),
        bx.hi[1].floor().to_integer(),
    ];
    let conv = |v: &BigInt| -> i64 { v.try_into().expect("candidate box fits in i64") };
    ([conv(&lo[0]), conv(&lo[1])], [conv(&hi[0]), conv(&hi[1])])
}

/// The difference graph on the candidate box, trimmed to states lying on an
/// infinite path. Returns the surviving states (including `0`).
pub fn live_difference_states(params: &TileParams) -> HashSet<[i64; 2]> {
    let (lo, hi) = difference_box(params);
    let mut states: HashSet<[i64; 2]> = HashSet::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            states.insert([x, y]);
        }
    }
    let d = params.b - 1;
    let succ = |s: [i64; 2]| -> Vec<[i64; 2]> {
        let ms = params.mul_int(s);
        (-d..=d).map(|k| [ms[0] + k, ms[1]]).collect()
    };
    // reverse adjacency for worklist trimming
    let mut out_deg: HashMap<[i64; 2], usize> = HashMap::new();
    let mut preds: HashMap<[i64; 2], Vec<[i64; 2]>> = HashMap::new();
    for &s in &states {
        let ts: Vec<_> = succ(s).into_iter().filter(|t| states.contains(t)).collect();
        out_deg.insert(s, ts.len());
        for t in ts {
            preds.entry(t).or_default().push(s);
        }
    }
    let mut queue: Vec<[i64; 2]> = out_deg.iter().filter(|(_, &n)| n == 0).map(|(&s, _)| s).collect();
    let mut removed: HashSet<[i64; 2]> = HashSet::new();
    while let Some(s) = queue.pop() {
        if !removed.insert(s) {
            continue;
        }
        if let Some(ps) = preds.get(&s) {
            for &p in ps {
                if removed.contains(&p) {
                    continue;
                }
                let n = out_deg.get_mut(&p).expect("known state");
                *n -= 1;
                if *n == 0 {
                    queue.push(p);
                }
            }
        }
    }
    states.retain(|s| !removed.contains(s));
    states
}

/// Neighbor set by graph search: all `s ≠ 0` with an infinite path
/// `s → M·s + (a′ − a, 0)ᵀ` inside the certified box.
pub fn neighbor_set_search(params: &TileParams) -> NeighborSet {
    let live = live_difference_states(params);
    let set: BTreeSet<NeighborVector> = live
        .into_iter()
        .filter(|&s| s != [0, 0])
        .map(NeighborVector)
        .collect();
    let j = Integer::div_floor(&(set.len() as i64 - 2), &4);
    NeighborSet::from_set(set, j)
}

/// The difference `Σ_{i=1..m} M^{m−i}(uᵢ − vᵢ, 0)ᵀ` of two equal-length words.
pub fn subdivision_diff(u: &DigitWord, v: &DigitWord, params: &TileParams) -> Result<[i64; 2]> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let mut s = [0i64, 0];
    for (&a, &b) in u.digits().iter().zip(v.digits()) {
        let ms = params.mul_int(s);
        s = [ms[0] + a as i64 - b as i64, ms[1]];
    }
    Ok(s)
}

/// Decides `𝒯_u ∩ 𝒯_v ≠ ∅` for the cylinders of two equal-length words.
pub fn subdivision_intersects(
    u: &DigitWord,
    v: &DigitWord,
    params: &TileParams,
    neighbors: &NeighborSet,
) -> Result<bool> {
    Ok(neighbors.contains_or_zero(subdivision_diff(u, v, params)?))
}

/// When `2A − B = 3` and `u − v = (1, A−2, −1)` digitwise, the cylinders
/// `𝒯_u`, `𝒯_v` meet in one point with the two addresses
/// `0.u(0(B−1))̄` and `0.v((B−1)0)̄`.
pub fn adjacent_singleton_point(
    u: &DigitWord,
    v: &DigitWord,
    params: &TileParams,
) -> Result<Option<(Address, Address)>> {
    if params.excess() != 3 {
        return Err(Error::WrongRegime { required: "2A − B = 3", a: params.a, b: params.b });
    }
    if u.len() != 3 || v.len() != 3 {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let d: Vec<i64> = u.digits().iter().zip(v.digits()).map(|(&x, &y)| x as i64 - y as i64).collect();
    if d != [1, params.a - 2, -1] {
        return Ok(None);
    }
    let top = params.max_digit();
    let left = Address::fractional(u.0.clone(), vec![0, top])?;
    let right = Address::fractional(v.0.clone(), vec![top, 0])?;
    Ok(Some((left, right)))
}

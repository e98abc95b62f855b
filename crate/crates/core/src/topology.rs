//! The topological trichotomy on `2A − B` and the cut-point certificate for
//! `2A − B ≥ 5`.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::automaton::{intersect_languages, DigitAutomaton, IntersectionAutomaton, IntersectionKind};
use crate::error::{Error, Result};
use crate::neighbors::{neighbor_set_formula, subdivision_intersects, NeighborSet};
use crate::numsys::{alt_flip, point_eval, Address, Digit, DigitWord, TileParams};
use crate::RationalPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    /// `2A − B ≤ 2`: homeomorphic to a closed disk.
    DiskLike,
    /// `2A − B ∈ {3, 4}`: no cut point, but the interior is disconnected.
    NoCutPointInteriorDisconnected,
    /// `2A − B ≥ 5`.
    HasCutPoint,
    /// `A = 0`: the tile is a rectangle.
    DegenerateRectangle,
    /// `A = B = 4`: `x² + 4x + 4 = (x + 2)²` and the tile is a square.
    SquareSpecialCase,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::DiskLike => "DiskLike",
            Classification::NoCutPointInteriorDisconnected => "NoCutPointInteriorDisconnected",
            Classification::HasCutPoint => "HasCutPoint",
            Classification::DegenerateRectangle => "DegenerateRectangle",
            Classification::SquareSpecialCase => "SquareSpecialCase",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify(params: &TileParams) -> Classification {
    if params.a == 0 {
        return Classification::DegenerateRectangle;
    }
    if params.a == 4 && params.b == 4 {
        return Classification::SquareSpecialCase;
    }
    match params.excess() {
        e if e <= 2 => Classification::DiskLike,
        3 | 4 => Classification::NoCutPointInteriorDisconnected,
        _ => Classification::HasCutPoint,
    }
}

fn require_cut_regime(params: &TileParams) -> Result<()> {
    if params.excess() < 5 {
        return Err(Error::WrongRegime { required: "2A − B ≥ 5", a: params.a, b: params.b });
    }
    Ok(())
}

/// `z = 0.(A−3)(A−3)′(A−3)(A−3)′…` with `(A−3)′ = B − A + 2`.
pub fn cut_point_address(params: &TileParams) -> Result<Address> {
    require_cut_regime(params)?;
    let c = (params.a - 3) as u32;
    Address::purely_periodic(vec![c, params.max_digit() - c])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LexSide {
    /// `a₁⁽⁰⁾a₂⁽¹⁾… ≤_lex (A−3)(A−3)…`
    AtMost,
    /// `a₁⁽⁰⁾a₂⁽¹⁾… ≥_lex (A−3)(A−3)…`
    AtLeast,
}

/// One of the two graph-directed pieces `D₁`, `D₂`, as a digit automaton
/// with states `TightEven = 0`, `TightOdd = 1`, `Free = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexGifs {
    pub side: LexSide,
    pub automaton: DigitAutomaton,
}

pub const TIGHT_EVEN: usize = 0;
pub const TIGHT_ODD: usize = 1;
pub const FREE: usize = 2;

impl LexGifs {
    fn new(params: &TileParams, side: LexSide) -> LexGifs {
        let c = (params.a - 3) as u32;
        let top = params.max_digit();
        // at odd positions the digit is flipped before comparing with c
        let tight = |n: i64| alt_flip(n, Digit(c), params).0;
        let row = |n: i64| -> Vec<(u32, usize)> {
            let next = if n == 0 { TIGHT_ODD } else { TIGHT_EVEN };
            (0..=top)
                .filter_map(|d| {
                    let cmp = alt_flip(n, Digit(d), params).0.cmp(&c);
                    if d == tight(n) {
                        Some((d, next))
                    } else {
                        match (side, cmp) {
                            (LexSide::AtMost, std::cmp::Ordering::Less) => Some((d, FREE)),
                            (LexSide::AtLeast, std::cmp::Ordering::Greater) => Some((d, FREE)),
                            _ => None,
                        }
                    }
                })
                .collect()
        };
        let names = vec!["TightEven".into(), "TightOdd".into(), "Free".into()];
        let free = (0..=top).map(|d| (d, FREE)).collect();
        LexGifs { side, automaton: DigitAutomaton::new(names, vec![TIGHT_EVEN], vec![row(0), row(1), free]) }
    }

    pub fn accepts(&self, addr: &Address) -> bool {
        self.automaton.accepts(addr)
    }

    /// Whether `word` is a prefix of some accepted sequence.
    pub fn accepts_prefix(&self, word: &[u32]) -> bool {
        let mut q = TIGHT_EVEN;
        for &d in word {
            match self.automaton.transitions[q].iter().find(|t| t.0 == d) {
                Some(&(_, t)) => q = t,
                None => return false,
            }
        }
        true
    }
}

/// `(D₁, D₂)`.
pub fn build_d1_d2(params: &TileParams) -> Result<(LexGifs, LexGifs)> {
    require_cut_regime(params)?;
    Ok((LexGifs::new(params, LexSide::AtMost), LexGifs::new(params, LexSide::AtLeast)))
}

/// The inductive cylinders `Gₙ = M^{−n−1}[⋃_c (𝒯 + Sₙ c⁽ⁿ⁾)]`,
/// `c ∈ {A−4, A−3, A−2}`, as words of length `n + 1`.
pub fn g_cylinders(params: &TileParams, n: usize) -> Vec<Vec<u32>> {
    let c = params.a - 3;
    let s_n: Vec<u32> = (0..n).map(|i| alt_flip(i as i64, Digit(c as u32), params).0).collect();
    [c - 1, c, c + 1]
        .iter()
        .filter(|&&d| d >= 0 && d < params.b)
        .map(|&d| {
            let mut w = s_n.clone();
            w.push(alt_flip(n as i64, Digit(d as u32), params).0);
            w
        })
        .collect()
}

/// Level-by-level replay of `I ⊂ Gₙ`: pairs of `D₁`/`D₂` prefixes whose
/// cylinders meet, each level extending the survivors of the previous one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GnReplay {
    pub depth: usize,
    /// Number of meeting cylinder pairs at word length `n + 1`.
    pub survivors: Vec<usize>,
}

pub fn replay_g_n(params: &TileParams, depth: usize) -> Result<GnReplay> {
    let (d1, d2) = build_d1_d2(params)?;
    let nb = neighbor_set_formula(params)?;
    let mut level: Vec<(Vec<u32>, Vec<u32>)> = vec![(Vec::new(), Vec::new())];
    let mut survivors = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let mut next = Vec::new();
        for (u, v) in &level {
            for a in 0..params.base() {
                let mut u2 = u.clone();
                u2.push(a);
                if !d1.accepts_prefix(&u2) {
                    continue;
                }
                for b in 0..params.base() {
                    let mut v2 = v.clone();
                    v2.push(b);
                    if d2.accepts_prefix(&v2) && meets(&u2, &v2, params, &nb)? {
                        next.push((u2.clone(), v2));
                    }
                }
            }
        }
        let g = g_cylinders(params, n);
        if let Some((u, v)) = next.iter().find(|(u, v)| !g.contains(u) || !g.contains(v)) {
            return Err(Error::CertificateFailure(format!(
                "cylinders {u:?} and {v:?} meet outside G_{n}"
            )));
        }
        survivors.push(next.len());
        level = next;
    }
    Ok(GnReplay { depth, survivors })
}

fn meets(u: &[u32], v: &[u32], params: &TileParams, nb: &NeighborSet) -> Result<bool> {
    subdivision_intersects(&DigitWord::from(u), &DigitWord::from(v), params, nb)
}

pub const DEFAULT_REPLAY_DEPTH: usize = 12;

#[derive(Clone, Debug)]
pub struct CutPointCertificate {
    pub params: TileParams,
    pub z: Address,
    pub value: RationalPoint,
    pub automaton: IntersectionAutomaton,
    /// One run through every live cycle state, with its value.
    pub cycles: Vec<(usize, Address, RationalPoint)>,
    pub replay: GnReplay,
}

pub fn verify_cut_point(params: &TileParams) -> Result<CutPointCertificate> {
    verify_cut_point_depth(params, DEFAULT_REPLAY_DEPTH)
}

pub fn verify_cut_point_depth(params: &TileParams, depth: usize) -> Result<CutPointCertificate> {
    let z = cut_point_address(params)?;
    let value: RationalPoint = point_eval(&z, params);
    let (d1, d2) = build_d1_d2(params)?;
    if !d1.automaton.union_is_universal(&d2.automaton, params.base()) {
        return Err(Error::CertificateFailure("D1 ∪ D2 misses some digit sequence".into()));
    }
    if !d1.accepts(&z) || !d2.accepts(&z) {
        return Err(Error::CertificateFailure(format!("z = {z} is not in both pieces")));
    }
    let nb = neighbor_set_formula(params)?;
    let automaton = intersect_languages(&d1.automaton, &d2.automaton, params, &nb, [0, 0]);
    match &automaton.kind {
        IntersectionKind::UniquePoint { point, .. } if *point == value => {}
        other => {
            return Err(Error::CertificateFailure(format!(
                "D1 ∩ D2 is {} instead of the single point {z}",
                other.label()
            )))
        }
    }
    let cycles = automaton.cycle_valuations(params);
    if let Some((q, a, _)) = cycles.iter().find(|c| c.2 != value) {
        return Err(Error::CertificateFailure(format!("run {a} through state {q} misses z")));
    }
    let replay = replay_g_n(params, depth)?;
    Ok(CutPointCertificate { params: *params, z, value, automaton, cycles, replay })
}

impl CutPointCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "cnstile.cut-point/v1",
            "A": self.params.a,
            "B": self.params.b,
            "z": self.z.to_string(),
            "value": [self.value.x.to_string(), self.value.y.to_string()],
            "automaton": self.automaton.to_json(),
            "cycles": self.cycles.iter().map(|(q, a, p)| json!({
                "state": q,
                "run": a.to_string(),
                "value": [p.x.to_string(), p.y.to_string()],
            })).collect::<Vec<_>>(),
            "replay": self.replay,
        })
    }
}

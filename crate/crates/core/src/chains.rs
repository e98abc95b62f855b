//! The chain construction for `2A − B = 3`: the curves `αᵢ = C([sᵢ, tᵢ])`,
//! their flips `αᵢ′`, the arcs `γᵢ`, and machine checks that they form a
//! chain and a circular chain.

use std::collections::{BTreeMap, VecDeque};

use serde_json::json;

use crate::automaton::{intersect_languages, DigitAutomaton, IntersectionKind};
use crate::contact::{psi, ContactGraph, OrderedContactGraph, Walk};
use crate::error::{Error, Result};
use crate::neighbors::{neighbor_set_formula, subdivision_intersects};
use crate::numsys::{apply_contraction, flip, flip_center, point_eval, Address, Digit, DigitWord, TileParams};
use crate::RationalPoint;

/// One row of the endpoint table: the walks of `sᵢ` and `tᵢ` and, where the
/// table records them, the expected endpoint addresses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaRow {
    pub i: u32,
    pub s: Walk,
    pub t: Walk,
    pub c_s: Option<Address>,
    pub c_t: Option<Address>,
}

fn w(start: usize, pre: &[i64], per: &[i64]) -> Walk {
    let z = |v: &[i64]| v.iter().map(|&k| (k - 1) as usize).collect();
    Walk::periodic(start - 1, z(pre), z(per))
}

fn addr(pre: &[i64], per: &[i64]) -> Address {
    let z = |v: &[i64]| v.iter().map(|&k| k as u32).collect();
    Address::fractional(z(pre), z(per)).expect("nonempty period")
}

pub fn require_chain_regime(params: &TileParams) -> Result<()> {
    if params.excess() != 3 || params.a == params.b {
        return Err(Error::WrongRegime { required: "2A − B = 3, A ≠ B", a: params.a, b: params.b });
    }
    Ok(())
}

/// The walks of the endpoints `sᵢ`, `tᵢ` for `i = 1 … B`.
pub fn alpha_table(params: &TileParams) -> Result<Vec<AlphaRow>> {
    require_chain_regime(params)?;
    let (a, b) = (params.a, params.b);
    let d = b - a;
    let mut rows = Vec::new();
    let cs = |i: i64| Some(addr(&[i, 0, b - 1], &[b - 1, 0]));
    let ct = |i: i64| Some(addr(&[i, a - 2, b - 2], &[0, b - 1]));
    for i in 1..=b - 2 {
        let (s, t) = if i < d {
            (w(6, &[2 * d - 2 * i, 1, b - 2], &[2]), w(6, &[2 * d - 2 * i + 1, 2 * a - 2, 4], &[2]))
        } else if i == d {
            (w(5, &[2 * a - 1, 1, b - 2], &[2]), w(6, &[1, 2 * a - 2, 4], &[2]))
        } else {
            (w(5, &[2 * b - 2 * i - 1, 1, b - 2], &[2]), w(5, &[2 * b - 2 * i, 2 * a - 2, 4], &[2]))
        };
        let recorded_s = i <= d || i == b - 2;
        rows.push(AlphaRow {
            i: i as u32,
            s,
            t,
            c_s: if recorded_s { cs(i) } else { None },
            c_t: if i <= d { ct(i) } else { None },
        });
    }
    rows.push(AlphaRow {
        i: (b - 1) as u32,
        s: w(5, &[2], &[2 * a - 2]),
        t: w(5, &[2, 2 * a - 2, 4], &[2]),
        c_s: Some(addr(&[b - 1], &[a - 2])),
        c_t: Some(addr(&[b - 1, a - 2, b - 2], &[0, b - 1])),
    });
    rows.push(AlphaRow {
        i: b as u32,
        s: w(3, &[2 * d, 1, 2 * d + 1], &[2]),
        t: w(3, &[2 * d + 1], &[2 * a - 2]),
        c_s: Some(addr(&[b - 1, b - 1, 0], &[0, b - 1])),
        c_t: Some(addr(&[b - 1], &[a - 2])),
    });
    Ok(rows)
}

/// Whether an ordering decodes every recorded table entry to the recorded address.
pub fn table_calibrates(g: &OrderedContactGraph) -> bool {
    let Ok(rows) = alpha_table(g.params()) else {
        return false;
    };
    rows.iter().all(|r| {
        let ok = |walk: &Walk, exp: &Option<Address>| match (psi(walk, g), exp) {
            (Ok(got), Some(e)) => &got == e,
            (Ok(_), None) => true,
            (Err(_), _) => false,
        };
        ok(&r.s, &r.c_s) && ok(&r.t, &r.c_t)
    })
}

/// Digit sequences of all infinite walks of `G` (any start state): the
/// addresses of boundary points.
pub fn boundary_language(g: &ContactGraph) -> DigitAutomaton {
    let mut transitions = vec![Vec::new(); 6];
    for e in &g.edges {
        transitions[e.source].push((e.digit, e.target));
    }
    let names = crate::contact::STATE_NAMES.iter().map(|s| s.to_string()).collect();
    DigitAutomaton::new(names, (0..6).collect(), transitions)
}

/// Position inside the lasso of a walk, advanced by one letter.
fn next_pos(w: &Walk, p: usize) -> usize {
    let n = p + 1;
    let (q, per) = (w.preperiod.len(), w.period.len());
    if n < q + per {
        n
    } else {
        q + (n - q) % per
    }
}

/// Lexicographic order of infinite walks: start state first, then letters.
pub fn walk_cmp(x: &Walk, y: &Walk) -> std::cmp::Ordering {
    let n = x.preperiod.len().max(y.preperiod.len()) + x.period.len().max(1) * y.period.len().max(1);
    x.start.cmp(&y.start).then_with(|| {
        (0..n)
            .map(|k| x.letter(k).cmp(&y.letter(k)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    })
}

/// `ψ` of the lexicographic walk interval `[s, t]` of `G°`: a digit automaton
/// whose states are `(state, position tight with s, position tight with t)`.
pub fn alpha_language(g: &OrderedContactGraph, s: &Walk, t: &Walk) -> Result<DigitAutomaton> {
    s.validate(g)?;
    t.validate(g)?;
    if !s.is_infinite() || !t.is_infinite() {
        return Err(Error::InvalidWalk("interval endpoints must be infinite walks".into()));
    }
    // the table lists one row with sᵢ > tᵢ; the curve is the interval between them
    let (s, t) = if walk_cmp(s, t) == std::cmp::Ordering::Greater { (t, s) } else { (s, t) };
    type St = (usize, Option<usize>, Option<usize>);
    let mut index: BTreeMap<St, usize> = BTreeMap::new();
    let mut order: Vec<St> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |st: St, order: &mut Vec<St>, queue: &mut VecDeque<St>| -> usize {
        *index.entry(st).or_insert_with(|| {
            order.push(st);
            queue.push_back(st);
            order.len() - 1
        })
    };
    let mut initial = Vec::new();
    for q in s.start..=t.start {
        let st = (q, (q == s.start).then_some(0), (q == t.start).then_some(0));
        initial.push(intern(st, &mut order, &mut queue));
    }
    let mut transitions: Vec<Vec<(u32, usize)>> = Vec::new();
    while let Some((q, lo, hi)) = queue.pop_front() {
        let mut row = Vec::new();
        for k in 0..g.out_degree(q) {
            let lo2 = match lo {
                Some(p) => {
                    let sk = s.letter(p).expect("infinite walk");
                    if k < sk {
                        continue;
                    }
                    (k == sk).then(|| next_pos(s, p))
                }
                None => None,
            };
            let hi2 = match hi {
                Some(p) => {
                    let tk = t.letter(p).expect("infinite walk");
                    if k > tk {
                        continue;
                    }
                    (k == tk).then(|| next_pos(t, p))
                }
                None => None,
            };
            let e = g.edge(q, k);
            row.push((e.digit, intern((e.target, lo2, hi2), &mut order, &mut queue)));
        }
        // FIFO order: states are popped in the order their ids were assigned
        transitions.push(row);
    }
    let pos = |p: Option<usize>| p.map_or("-".to_string(), |p| p.to_string());
    let names = order.iter().map(|&(q, lo, hi)| format!("{}:{}:{}", q + 1, pos(lo), pos(hi))).collect();
    Ok(DigitAutomaton::new(names, initial, transitions).trimmed())
}

/// A curve `αᵢ = C([sᵢ, tᵢ])` or its flip `αᵢ′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCurve {
    pub index: u32,
    pub flipped: bool,
    pub s: Walk,
    pub t: Walk,
    pub language: DigitAutomaton,
    /// `(C(sᵢ), C(tᵢ))`, flipped for `αᵢ′`.
    pub endpoints: (Address, Address),
}

impl AlphaCurve {
    pub fn name(&self) -> String {
        format!("alpha_{}{}", self.index, if self.flipped { "'" } else { "" })
    }

    /// `αᵢ′`: every digit `a` replaced by `B − 1 − a`.
    pub fn flipped(&self, params: &TileParams) -> AlphaCurve {
        let top = params.max_digit();
        AlphaCurve {
            index: self.index,
            flipped: !self.flipped,
            s: self.s.clone(),
            t: self.t.clone(),
            language: self.language.map_digits(|d| top - d),
            endpoints: (flip(&self.endpoints.0, params), flip(&self.endpoints.1, params)),
        }
    }
}

/// `α₁ … α_B`, each checked against the table and the boundary language.
pub fn alpha_curves(g: &OrderedContactGraph) -> Result<Vec<AlphaCurve>> {
    let params = g.params();
    let boundary = boundary_language(&g.graph);
    let mut out = Vec::new();
    for row in alpha_table(params)? {
        let language = alpha_language(g, &row.s, &row.t)?;
        let endpoints = (psi(&row.s, g)?, psi(&row.t, g)?);
        let fail = |what: String| Error::ChainViolation(format!("alpha_{}: {what}", row.i));
        for (got, want) in [(&endpoints.0, &row.c_s), (&endpoints.1, &row.c_t)] {
            if let Some(w) = want {
                if got != w {
                    return Err(fail(format!("endpoint decodes to {got}, table has {w}")));
                }
            }
            if !language.accepts(got) {
                return Err(fail(format!("endpoint {got} not in the curve")));
            }
        }
        if let Err(w) = language.included_in(&boundary) {
            return Err(fail(format!("prefix {w:?} leaves the boundary language")));
        }
        out.push(AlphaCurve { index: row.i, flipped: false, s: row.s, t: row.t, language, endpoints });
    }
    Ok(out)
}

/// Checks `value(flip x) = 0.(B−1)̄ − value(x)` and membership of `flip x` in
/// `α′` on sample words of `α`, plus equality of the depth-`n` prefix sets.
pub fn check_flip_coherence(c: &AlphaCurve, cp: &AlphaCurve, params: &TileParams, n: usize) -> Result<()> {
    let centre: RationalPoint = flip_center(params);
    let top = params.max_digit();
    let mut words = c.language.sample_words();
    words.push(c.endpoints.0.clone());
    words.push(c.endpoints.1.clone());
    for x in &words {
        let fx = flip(x, params);
        let (v, fv): (RationalPoint, RationalPoint) = (point_eval(x, params), point_eval(&fx, params));
        if fv != &centre - &v || !cp.language.accepts(&fx) {
            return Err(Error::IdentityFailure(format!("flip of {x} in {}", cp.name())));
        }
    }
    let flipped: std::collections::BTreeSet<Vec<u32>> =
        c.language.prefixes(n).into_iter().map(|w| w.into_iter().map(|d| top - d).collect()).collect();
    if flipped != cp.language.prefixes(n) {
        return Err(Error::IdentityFailure(format!("depth-{n} prefixes of {}", cp.name())));
    }
    Ok(())
}

/// Pairwise intersections of a list of curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub names: Vec<String>,
    /// `cells[i][j]` for `i < j`; `None` on and below the diagonal.
    pub cells: Vec<Vec<Option<IntersectionKind>>>,
    pub circular: bool,
}

impl ChainReport {
    pub fn get(&self, i: usize, j: usize) -> &IntersectionKind {
        let (i, j) = (i.min(j), i.max(j));
        self.cells[i][j].as_ref().expect("off-diagonal cell")
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.names.len();
        let d = i.abs_diff(j);
        d == 1 || (self.circular && d == n - 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.names.len();
        let cell = |k: &IntersectionKind| match k {
            IntersectionKind::UniquePoint { address, point } => json!({
                "label": "UNIQUE_POINT",
                "address": address.to_string(),
                "point": [point.x.to_string(), point.y.to_string()],
            }),
            other => json!({"label": other.label()}),
        };
        json!({
            "schema": "cnstile.chain-report/v1",
            "curves": self.names,
            "circular": self.circular,
            "matrix": (0..n).map(|i| (0..n).map(|j| if i == j { json!(null) } else { cell(self.get(i, j)) }).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Fixed-width table: `.` empty, `1` one point, `*` anything else.
    pub fn to_table(&self) -> String {
        let n = self.names.len();
        let w = self.names.iter().map(String::len).max().unwrap_or(0);
        let mut s = String::new();
        for i in 0..n {
            s += &format!("{:>w$} ", self.names[i]);
            for j in 0..n {
                s.push(match (i == j, i != j && matches!(self.get(i, j), IntersectionKind::Empty)) {
                    (true, _) => '\\',
                    (false, true) => '.',
                    _ if matches!(self.get(i, j), IntersectionKind::UniquePoint { .. }) => '1',
                    _ => '*',
                });
            }
            s.push('\n');
        }
        s
    }
}

pub fn intersection_report(curves: &[AlphaCurve], params: &TileParams, circular: bool) -> Result<ChainReport> {
    let nb = neighbor_set_formula(params)?;
    let n = curves.len();
    let mut cells = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let ia = intersect_languages(&curves[i].language, &curves[j].language, params, &nb, [0, 0]);
            cells[i][j] = Some(ia.kind);
        }
    }
    Ok(ChainReport { names: curves.iter().map(AlphaCurve::name).collect(), cells, circular })
}

/// Checks the (circular) chain pattern; `expected` lists, per adjacent pair,
/// addresses that must all denote the common point.
pub fn check_chain(report: &ChainReport, expected: &[(usize, usize, Vec<Address>)], params: &TileParams) -> Result<()> {
    let n = report.names.len();
    let name = |i: usize| &report.names[i];
    for i in 0..n {
        for j in i + 1..n {
            let kind = report.get(i, j);
            if report.adjacent(i, j) {
                let IntersectionKind::UniquePoint { point, .. } = kind else {
                    return Err(Error::ChainViolation(format!("{} ∩ {} is {}", name(i), name(j), kind.label())));
                };
                let want = expected.iter().find(|e| (e.0, e.1) == (i, j) || (e.1, e.0) == (i, j));
                for a in want.map(|e| e.2.as_slice()).unwrap_or(&[]) {
                    if point_eval::<num_rational::BigRational>(a, params) != *point {
                        return Err(Error::ChainViolation(format!(
                            "{} ∩ {} is not the point {a}",
                            name(i),
                            name(j)
                        )));
                    }
                }
            } else if *kind != IntersectionKind::Empty {
                let witness = match kind {
                    IntersectionKind::UniquePoint { address, .. } => address.to_string(),
                    IntersectionKind::FinitePoints(ps) => ps[0].0.to_string(),
                    IntersectionKind::Branching { witnesses } => witnesses.first().map(|a| a.to_string()).unwrap_or_default(),
                    IntersectionKind::Empty => unreachable!(),
                };
                return Err(Error::ChainViolation(format!(
                    "{} ∩ {} should be empty, contains {witness}",
                    name(i),
                    name(j)
                )));
            }
        }
    }
    Ok(())
}

fn fa(pre: &[i64], per: &[i64]) -> Address {
    addr(pre, per)
}

/// The junction points of the cycle `α₁, …, α_B, α₁′, …, α_B′` (indices
/// `0 … 2B−1`), each with every address form under which the lemmas state it.
pub fn expected_junctions(params: &TileParams) -> Vec<(usize, usize, Vec<Address>)> {
    let (a, b) = (params.a, params.b);
    let bu = b as usize;
    let top = b - 1;
    let mut out = Vec::new();
    for i in 1..=b - 2 {
        out.push((
            (i - 1) as usize,
            i as usize,
            vec![fa(&[i, 0, top], &[top, 0]), fa(&[i + 1, a - 2, b - 2], &[0, top])],
        ));
    }
    out.push((bu - 2, bu - 1, vec![fa(&[top], &[a - 2]), fa(&[top], &[a - 2, b - a + 1])]));
    let primes: Vec<_> = out
        .iter()
        .map(|(i, j, v)| (i + bu, j + bu, v.iter().map(|x| flip(x, params)).collect()))
        .collect();
    out.extend(primes);
    out.push((
        bu - 1,
        bu,
        vec![
            fa(&[top, top, 0], &[0, top]),
            fa(&[b - 2, a - 2, 1], &[top, 0]),
            fa(&[b - 2, b - a + 1, 1], &[top, 0]),
        ],
    ));
    out.push((0, 2 * bu - 1, vec![fa(&[0, 0, top], &[top, 0]), fa(&[1, a - 2, b - 2], &[0, top])]));
    out
}

/// `α₁, …, α_B` form a chain with the stated junctions.
pub fn verify_chain(g: &OrderedContactGraph) -> Result<ChainReport> {
    let params = g.params();
    let curves = alpha_curves(g)?;
    let report = intersection_report(&curves, params, false)?;
    let bu = params.b as usize;
    let exp: Vec<_> = expected_junctions(params).into_iter().filter(|e| e.0 < bu && e.1 < bu).collect();
    check_chain(&report, &exp, params)?;
    Ok(report)
}

/// `α₁′, …, α_B′` form a chain.
pub fn verify_prime_chain(g: &OrderedContactGraph) -> Result<ChainReport> {
    let params = g.params();
    let curves: Vec<_> = alpha_curves(g)?.iter().map(|c| c.flipped(params)).collect();
    let report = intersection_report(&curves, params, false)?;
    let bu = params.b as usize;
    let exp: Vec<_> = expected_junctions(params)
        .into_iter()
        .filter(|e| e.0 >= bu && e.1 >= bu)
        .map(|(i, j, v)| (i - bu, j - bu, v))
        .collect();
    check_chain(&report, &exp, params)?;
    Ok(report)
}

/// `α₁, …, α_B, α₁′, …, α_B′` form a circular chain.
pub fn verify_circular_chain(g: &OrderedContactGraph) -> Result<ChainReport> {
    let params = g.params();
    let alphas = alpha_curves(g)?;
    let mut curves = alphas.clone();
    for c in &alphas {
        let cp = c.flipped(params);
        check_flip_coherence(c, &cp, params, 5)?;
        curves.push(cp);
    }
    let report = intersection_report(&curves, params, true)?;
    check_chain(&report, &expected_junctions(params), params)?;
    Ok(report)
}

/// `γᵢ = f_i f_{B−1}⁻¹(α_{B−1} ∪ α_B)` on the level of digit languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaArc {
    pub i: u32,
    pub language: DigitAutomaton,
    pub endpoints: (Address, Address),
    pub through: Address,
}

/// Replaces the leading digit `from` of every accepted word by `to`.
fn substitute_first(l: &DigitAutomaton, from: u32, to: u32) -> DigitAutomaton {
    let l = l.trimmed();
    let n = l.len();
    let mut names = l.names.clone();
    let mut transitions = l.transitions.clone();
    let mut initial = Vec::new();
    for &q in &l.initial {
        // fresh copy of each initial state, reading only the substituted digit
        names.push(format!("{}>{to}", l.names[q]));
        transitions.push(l.transitions[q].iter().filter(|t| t.0 == from).map(|&(_, t)| (to, t)).collect());
        initial.push(n + initial.len());
    }
    DigitAutomaton::new(names, initial, transitions).trimmed()
}

pub fn gamma_arcs(g: &OrderedContactGraph) -> Result<Vec<GammaArc>> {
    let params = g.params();
    let (a, b) = (params.a, params.b);
    let top = params.max_digit();
    let curves = alpha_curves(g)?;
    let (ab1, ab) = (&curves[(b - 2) as usize], &curves[(b - 1) as usize]);
    let both = ab1.language.union(&ab.language);
    let boundary = boundary_language(&g.graph);
    let junction_values: Vec<RationalPoint> =
        expected_junctions(params).iter().map(|e| point_eval(&e.2[0], params)).collect();
    let edge = |s: usize, d: u32, t: usize| g.graph.edges.iter().any(|e| e.source == s && e.digit == d && e.target == t);
    let mut out = Vec::new();
    for i in 1..=(b - 2) {
        let iu = i as u32;
        let fail = |what: String| Error::ChainViolation(format!("gamma_{i}: {what}"));
        let language = substitute_first(&both, top, iu);
        if let Err(w) = language.included_in(&boundary) {
            return Err(fail(format!("prefix {w:?} leaves the boundary")));
        }
        // images of the outer endpoints of α_{B−1} ∪ α_B
        let shift = |x: &Address| x.shift(1).prepend(&[iu]);
        let endpoints = (shift(&ab1.endpoints.1), shift(&ab.endpoints.0));
        let stated = (addr(&[i, a - 2, b - 2], &[0, b - 1]), addr(&[i, b - 1, 0], &[0, b - 1]));
        let through = addr(&[i], &[a - 2]);
        for (got, want) in [(&endpoints.0, &stated.0), (&endpoints.1, &stated.1)] {
            if point_eval::<num_rational::BigRational>(got, params) != point_eval(want, params) {
                return Err(fail(format!("endpoint {got} differs from {want}")));
            }
            if !language.accepts(got) {
                return Err(fail(format!("endpoint {got} not on the arc")));
            }
            if !junction_values.contains(&point_eval(got, params)) {
                return Err(fail(format!("endpoint {got} is not a junction of the circular chain")));
            }
        }
        if !language.accepts(&through) {
            return Err(fail(format!("does not pass through {through}")));
        }
        // 0.i[K₂] ⊂ K₆ or K₅; 0.i[K₄] ⊂ K₂ or K₃; 0.i[K₅] ⊂ K₂ or K₃
        let k2 = if i <= b - a { 5 } else { 4 };
        let k4 = if i <= a - 1 { 1 } else { 2 };
        let k5 = if i <= a - 2 { 1 } else { 2 };
        for (s, t) in [(k2, 1), (k4, 3), (k5, 4)] {
            if !edge(s, iu, t) {
                return Err(fail(format!("no edge K{} --{i}--> K{}", s + 1, t + 1)));
            }
        }
        out.push(GammaArc { i: iu, language, endpoints, through });
    }
    Ok(out)
}

/// The symmetry centre `S = 0.(A−2)̄` and the points `Pᵢ = 0.i(A−2)̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub centre: RationalPoint,
    pub points: Vec<RationalPoint>,
}

pub fn symmetry_and_junctions(g: &OrderedContactGraph) -> Result<SymmetryReport> {
    let params = g.params();
    if params.excess() != 3 {
        return Err(Error::WrongRegime { required: "2A − B = 3", a: params.a, b: params.b });
    }
    let (a, b) = (params.a, params.b);
    let centre: RationalPoint = point_eval(&addr(&[], &[a - 2]), params);
    let top: RationalPoint = flip_center(params);
    let half = num_rational::BigRational::new(1.into(), 2.into());
    if centre != top.scale(&half) {
        return Err(Error::IdentityFailure("0.(A−2)̄ is not half of 0.(B−1)̄".into()));
    }
    let mut points = Vec::new();
    for i in 0..b {
        let p: RationalPoint = point_eval(&addr(&[i], &[a - 2]), params);
        if p != apply_contraction(Digit(i as u32), &centre, params) {
            return Err(Error::IdentityFailure(format!("P_{i} ≠ f_{i}(S)")));
        }
        points.push(p);
    }
    if params.a != params.b {
        let rows = alpha_table(params)?;
        let (rb1, rb) = (&rows[(b - 2) as usize], &rows[(b - 1) as usize]);
        let pb1 = &points[(b - 1) as usize];
        for w in [&rb1.s, &rb.t] {
            let x = psi(w, g)?;
            if point_eval::<num_rational::BigRational>(&x, params) != *pb1 {
                return Err(Error::IdentityFailure(format!("P_{} is not the endpoint {x}", b - 1)));
            }
            if point_eval::<num_rational::BigRational>(&flip(&x, params), params) != points[0] {
                return Err(Error::IdentityFailure("P_0 is not the flipped endpoint".into()));
            }
        }
    }
    Ok(SymmetryReport { centre, points })
}

/// How many word pairs each item of the subdivision lemma was checked on.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SubdivisionReplay {
    pub max_len: usize,
    pub checked: [usize; 5],
    /// Singleton intersections confirmed by the product automaton.
    pub singletons: usize,
}

/// Replays the case analysis of the subdivision intersections (first digits
/// differing by one, words up to length 4) against the neighbor criterion.
pub fn replay_subdivision_lemma(params: &TileParams) -> Result<SubdivisionReplay> {
    if params.excess() != 3 {
        return Err(Error::WrongRegime { required: "2A − B = 3", a: params.a, b: params.b });
    }
    let nb = neighbor_set_formula(params)?;
    let (a, b) = (params.a, params.b);
    let base = params.base();
    let meets = |u: &[u32], v: &[u32]| subdivision_intersects(&DigitWord::from(u), &DigitWord::from(v), params, &nb);
    let fail = |u: &[u32], v: &[u32]| Error::IdentityFailure(format!("subdivisions {u:?} and {v:?}"));
    let d = |x: u32, y: u32| x as i64 - y as i64;
    let mut checked = [0usize; 5];
    // item 1
    for x in 0..base {
        for y in 0..base {
            if x != y {
                if meets(&[x], &[y])? != (d(x, y).abs() == 1) {
                    return Err(fail(&[x], &[y]));
                }
                checked[0] += 1;
            }
        }
    }
    // items 2–5 with a₁ − a₁′ = 1; extend pairs of tails
    let pairs2: Vec<(u32, u32)> = (0..base).flat_map(|x| (0..base).map(move |y| (x, y))).collect();
    let mut singletons = 0;
    for a1 in 1..base {
        let a1p = a1 - 1;
        for &(a2, a2p) in &pairs2 {
            let (u, v) = ([a1, a2], [a1p, a2p]);
            let d2 = d(a2, a2p);
            if meets(&u, &v)? != [a, a - 1, a - 2].contains(&d2) {
                return Err(fail(&u, &v));
            }
            checked[1] += 1;
            if d2 == a - 2 {
                for &(a3, a3p) in &pairs2 {
                    let (u3, v3) = ([a1, a2, a3], [a1p, a2p, a3p]);
                    let m = meets(&u3, &v3)?;
                    if m != (d(a3, a3p) == -1) {
                        return Err(fail(&u3, &v3));
                    }
                    checked[4] += 1;
                    if m {
                        let top = params.max_digit();
                        let x = Address::fractional(u3.to_vec(), vec![0, top])?;
                        let y = Address::fractional(v3.to_vec(), vec![top, 0])?;
                        let px: RationalPoint = point_eval(&x, params);
                        if px != point_eval(&y, params) {
                            return Err(fail(&u3, &v3));
                        }
                        let ia = intersect_languages(
                            &DigitAutomaton::cylinder(&u3, base),
                            &DigitAutomaton::cylinder(&v3, base),
                            params,
                            &nb,
                            [0, 0],
                        );
                        match ia.kind {
                            IntersectionKind::UniquePoint { point, .. } if point == px => singletons += 1,
                            _ => return Err(fail(&u3, &v3)),
                        }
                    }
                }
            }
            if d2 == a || d2 == a - 1 {
                for &(a3, a3p) in &pairs2 {
                    for &(a4, a4p) in &pairs2 {
                        let (u4, v4) = ([a1, a2, a3, a4], [a1p, a2p, a3p, a4p]);
                        let (d3, d4) = (d(a3, a3p), d(a4, a4p));
                        let stated = if d2 == a {
                            a3 == base - 1 && a3p == 0 && [-a, -a + 1, -a + 2].contains(&d4)
                        } else {
                            (d3 == b - a && a4 == 0 && a4p == base - 1)
                                || (d3 == b - a + 1 && [a - b, a - b - 1, a - b - 2].contains(&d4))
                                || (d3 == b - a + 2 && d4 == 1)
                        };
                        if meets(&u4, &v4)? != stated {
                            return Err(fail(&u4, &v4));
                        }
                        checked[if d2 == a { 2 } else { 3 }] += 1;
                    }
                }
            }
        }
    }
    Ok(SubdivisionReplay { max_len: 4, checked, singletons })
}

/// Everything checked for one parameter pair of the chain regime.
#[derive(Clone, Debug)]
pub struct ChainVerification {
    pub chain: ChainReport,
    pub circular: ChainReport,
    pub gammas: Vec<GammaArc>,
    pub symmetry: SymmetryReport,
    pub subdivision: SubdivisionReplay,
}

pub fn verify_all(g: &OrderedContactGraph) -> Result<ChainVerification> {
    Ok(ChainVerification {
        subdivision: replay_subdivision_lemma(g.params())?,
        chain: verify_chain(g)?,
        circular: verify_circular_chain(g)?,
        gammas: gamma_arcs(g)?,
        symmetry: symmetry_and_junctions(g)?,
    })
}

impl ChainVerification {
    pub fn to_json(&self) -> serde_json::Value {
        let pt = |p: &RationalPoint| json!([p.x.to_string(), p.y.to_string()]);
        json!({
            "schema": "cnstile.chains/v1",
            "chain": self.chain.to_json(),
            "circular_chain": self.circular.to_json(),
            "gamma_arcs": self.gammas.iter().map(|g| json!({
                "i": g.i,
                "endpoints": [g.endpoints.0.to_string(), g.endpoints.1.to_string()],
                "through": g.through.to_string(),
            })).collect::<Vec<_>>(),
            "symmetry_centre": pt(&self.symmetry.centre),
            "junction_points": self.symmetry.points.iter().map(pt).collect::<Vec<_>>(),
            "subdivision_lemma": self.subdivision,
        })
    }
}

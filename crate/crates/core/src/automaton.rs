//! Digit automata with looping acceptance (a word is accepted iff it has an
//! infinite run) and the product automaton deciding which pairs of
//! addresses from two languages denote the same point.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde_json::json;

use crate::error::Result;
use crate::neighbors::NeighborSet;
use crate::numsys::{point_eval, Address, TileParams};
use crate::RationalPoint;

/// A nondeterministic automaton over the digits `0 … B−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitAutomaton {
    pub names: Vec<String>,
    pub initial: Vec<usize>,
    /// `transitions[q]` lists `(digit, target)` pairs, sorted.
    pub transitions: Vec<Vec<(u32, usize)>>,
}

impl DigitAutomaton {
    pub fn new(names: Vec<String>, initial: Vec<usize>, mut transitions: Vec<Vec<(u32, usize)>>) -> Self {
        for t in &mut transitions {
            t.sort_unstable();
            t.dedup();
        }
        DigitAutomaton { names, initial, transitions }
    }

    /// One state accepting every digit sequence.
    pub fn full(base: u32) -> Self {
        DigitAutomaton::new(vec!["all".into()], vec![0], vec![(0..base).map(|d| (d, 0)).collect()])
    }

    /// Accepts exactly the sequences starting with `prefix`, followed by anything.
    pub fn cylinder(prefix: &[u32], base: u32) -> Self {
        let n = prefix.len();
        let mut transitions: Vec<Vec<(u32, usize)>> = prefix.iter().enumerate().map(|(i, &d)| vec![(d, i + 1)]).collect();
        transitions.push((0..base).map(|d| (d, n)).collect());
        let names = (0..=n).map(|i| format!("p{i}")).collect();
        DigitAutomaton::new(names, vec![0], transitions)
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1
            && self.transitions.iter().all(|t| t.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// States from which an infinite run exists.
    pub fn live_states(&self) -> Vec<bool> {
        live_set(self.len(), |q| self.transitions[q].iter().map(|t| t.1).collect())
    }

    /// Removes transitions into dead states and dead initial states.
    pub fn trimmed(&self) -> DigitAutomaton {
        let live = self.live_states();
        let transitions = self
            .transitions
            .iter()
            .enumerate()
            .map(|(q, t)| if live[q] { t.iter().copied().filter(|x| live[x.1]).collect() } else { vec![] })
            .collect();
        let initial = self.initial.iter().copied().filter(|&q| live[q]).collect();
        DigitAutomaton::new(self.names.clone(), initial, transitions)
    }

    fn step_set(&self, set: &BTreeSet<usize>, d: u32) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&q| self.transitions[q].iter().filter(move |t| t.0 == d).map(|t| t.1))
            .collect()
    }

    /// Membership of an eventually periodic digit sequence (fractional part).
    pub fn accepts(&self, addr: &Address) -> bool {
        let a = self.trimmed();
        let mut set: BTreeSet<usize> = a.initial.iter().copied().collect();
        for &d in addr.preperiod().digits() {
            set = a.step_set(&set, d);
            if set.is_empty() {
                return false;
            }
        }
        let per = addr.period().digits();
        let mut seen = HashSet::new();
        let mut pos = 0;
        while seen.insert((pos, set.clone())) {
            set = a.step_set(&set, per[pos]);
            if set.is_empty() {
                return false;
            }
            pos = (pos + 1) % per.len();
        }
        true
    }

    /// Whether the languages of `self` and `other` together cover every
    /// digit sequence over `0 … base−1`.
    pub fn union_is_universal(&self, other: &DigitAutomaton, base: u32) -> bool {
        let (a, b) = (self.trimmed(), other.trimmed());
        let start = (a.initial.iter().copied().collect::<BTreeSet<_>>(), b.initial.iter().copied().collect::<BTreeSet<_>>());
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some((x, y)) = queue.pop_front() {
            if x.is_empty() && y.is_empty() {
                return false;
            }
            for d in 0..base {
                let next = (a.step_set(&x, d), b.step_set(&y, d));
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        true
    }

    /// `L(self) ⊆ L(other)`; on failure returns a finite prefix accepted as a
    /// prefix by `self` that `other` cannot continue.
    pub fn included_in(&self, other: &DigitAutomaton) -> std::result::Result<(), Vec<u32>> {
        let (a, b) = (self.trimmed(), other.trimmed());
        let binit: BTreeSet<usize> = b.initial.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        for &q in &a.initial {
            if seen.insert((q, binit.clone())) {
                queue.push_back((q, binit.clone(), Vec::new()));
            }
        }
        while let Some((q, set, word)) = queue.pop_front() {
            if set.is_empty() {
                return Err(word);
            }
            for &(d, t) in &a.transitions[q] {
                let next = b.step_set(&set, d);
                if seen.insert((t, next.clone())) {
                    let mut w = word.clone();
                    w.push(d);
                    queue.push_back((t, next, w));
                }
            }
        }
        Ok(())
    }

    /// Any accepted sequence, as an eventually periodic address (lasso along
    /// the smallest live transitions).
    pub fn witness(&self) -> Option<Address> {
        let a = self.trimmed();
        let &q0 = a.initial.first()?;
        let mut seen = HashMap::new();
        let mut digits = Vec::new();
        let mut q = q0;
        loop {
            if let Some(&at) = seen.get(&q) {
                let per = digits.split_off(at);
                return Address::fractional(digits, per).ok();
            }
            seen.insert(q, digits.len());
            let &(d, t) = a.transitions[q].first()?;
            digits.push(d);
            q = t;
        }
    }

    /// The words of length `n` that extend to accepted sequences.
    pub fn prefixes(&self, n: usize) -> BTreeSet<Vec<u32>> {
        let a = self.trimmed();
        let mut cur: BTreeSet<(usize, Vec<u32>)> = a.initial.iter().map(|&q| (q, Vec::new())).collect();
        for _ in 0..n {
            cur = cur
                .iter()
                .flat_map(|(q, w)| {
                    a.transitions[*q].iter().map(move |&(d, t)| {
                        let mut w2 = w.clone();
                        w2.push(d);
                        (t, w2)
                    })
                })
                .collect();
        }
        cur.into_iter().map(|(_, w)| w).collect()
    }

    /// Relabels every transition digit.
    pub fn map_digits(&self, f: impl Fn(u32) -> u32) -> DigitAutomaton {
        let transitions = self.transitions.iter().map(|ts| ts.iter().map(|&(d, t)| (f(d), t)).collect()).collect();
        DigitAutomaton::new(self.names.clone(), self.initial.clone(), transitions)
    }

    /// Disjoint union; the language is the union of both.
    pub fn union(&self, other: &DigitAutomaton) -> DigitAutomaton {
        let n = self.len();
        let mut names = self.names.clone();
        names.extend(other.names.iter().map(|x| format!("{x}'")));
        let mut initial = self.initial.clone();
        initial.extend(other.initial.iter().map(|&q| q + n));
        let mut transitions = self.transitions.clone();
        transitions.extend(other.transitions.iter().map(|ts| ts.iter().map(|&(d, t)| (d, t + n)).collect()));
        DigitAutomaton::new(names, initial, transitions)
    }

    /// One accepted sequence through every live reachable state: a shortest
    /// prefix to the state followed by the lasso along its smallest transitions.
    pub fn sample_words(&self) -> Vec<Address> {
        let a = self.trimmed();
        let mut prefix: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &q in &a.initial {
            if !prefix.contains_key(&q) {
                prefix.insert(q, Vec::new());
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &(d, t) in &a.transitions[q] {
                if !prefix.contains_key(&t) {
                    let mut w = prefix[&q].clone();
                    w.push(d);
                    prefix.insert(t, w);
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Address> = prefix
            .iter()
            .filter_map(|(&q, w)| {
                let b = DigitAutomaton::new(a.names.clone(), vec![q], a.transitions.clone());
                b.witness().map(|x| x.prepend(w))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "states": self.names,
            "initial": self.initial,
            "transitions": self.transitions.iter().enumerate().flat_map(|(q, ts)| {
                ts.iter().map(move |&(d, t)| json!([q, d, t]))
            }).collect::<Vec<_>>(),
        })
    }
}

/// Greatest fixed point of "has a successor in the set".
fn live_set(n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let succs: Vec<Vec<usize>> = (0..n).map(&succ).collect();
    let mut preds = vec![Vec::new(); n];
    let mut deg = vec![0usize; n];
    for (q, ts) in succs.iter().enumerate() {
        deg[q] = ts.len();
        for &t in ts {
            preds[t].push(q);
        }
    }
    let mut live = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&q| deg[q] == 0).collect();
    while let Some(q) = stack.pop() {
        if !live[q] {
            continue;
        }
        live[q] = false;
        for &p in &preds[q] {
            if live[p] {
                deg[p] -= 1;
                if deg[p] == 0 {
                    stack.push(p);
                }
            }
        }
    }
    live
}

/// Product state `(q₁, q₂, s)`.
pub type ProductState = (usize, usize, [i64; 2]);

/// What the live part of a product automaton says about the set of common points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionKind {
    Empty,
    /// Every accepted pair denotes this one point (x-side address shown).
    UniquePoint { address: Address, point: RationalPoint },
    /// Finitely many runs; their distinct values.
    FinitePoints(Vec<(Address, RationalPoint)>),
    /// A live cycle has a branch, so there are infinitely many runs; the
    /// number of distinct points is left open. Witnesses are sample runs.
    Branching { witnesses: Vec<Address> },
}

impl IntersectionKind {
    pub fn label(&self) -> &'static str {
        match self {
            IntersectionKind::Empty => "EMPTY",
            IntersectionKind::UniquePoint { .. } => "UNIQUE_POINT",
            IntersectionKind::FinitePoints(_) => "FINITE_POINTS",
            IntersectionKind::Branching { .. } => "BRANCHING",
        }
    }
}

/// Product of two digit automata reading `x = 0.a₁a₂…` and `y = 0.a₁′a₂′…`
/// with difference state `s ↦ M·s + (a − a′, 0)ᵀ` kept in `𝒮 ∪ {0}`.
/// Infinite runs from start `s₀` correspond to pairs with `x − y = −s₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionAutomaton {
    /// Sorted by `(q₁, q₂, s)`.
    pub states: Vec<ProductState>,
    pub initial: Vec<usize>,
    /// `(from, a, a′, to)`.
    pub edges: Vec<(usize, u32, u32, usize)>,
    pub live: Vec<bool>,
    pub kind: IntersectionKind,
}

const MAX_ENUMERATED_RUNS: usize = 4096;

pub fn intersect_languages(
    l1: &DigitAutomaton,
    l2: &DigitAutomaton,
    params: &TileParams,
    neighbors: &NeighborSet,
    start: [i64; 2],
) -> IntersectionAutomaton {
    let (l1, l2) = (l1.trimmed(), l2.trimmed());
    let mut index: BTreeMap<ProductState, ()> = BTreeMap::new();
    let mut raw_edges: Vec<(ProductState, u32, u32, ProductState)> = Vec::new();
    let mut queue = VecDeque::new();
    let mut init = Vec::new();
    if neighbors.contains_or_zero(start) {
        for &q1 in &l1.initial {
            for &q2 in &l2.initial {
                let st = (q1, q2, start);
                if index.insert(st, ()).is_none() {
                    queue.push_back(st);
                }
                init.push(st);
            }
        }
    }
    while let Some((q1, q2, s)) = queue.pop_front() {
        let ms = params.mul_int(s);
        for &(a, t1) in &l1.transitions[q1] {
            for &(a2, t2) in &l2.transitions[q2] {
                let t = [ms[0] + a as i64 - a2 as i64, ms[1]];
                if !neighbors.contains_or_zero(t) {
                    continue;
                }
                let next = (t1, t2, t);
                raw_edges.push(((q1, q2, s), a, a2, next));
                if index.insert(next, ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
    }
    let states: Vec<ProductState> = index.keys().copied().collect();
    let id = |st: &ProductState| states.binary_search(st).expect("indexed");
    let mut edges: Vec<(usize, u32, u32, usize)> = raw_edges.iter().map(|(f, a, b, t)| (id(f), *a, *b, id(t))).collect();
    edges.sort_unstable();
    edges.dedup();
    let mut initial: Vec<usize> = init.iter().map(id).collect();
    initial.sort_unstable();
    initial.dedup();
    let n = states.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        out[e.0].push(k);
    }
    let live = live_set(n, |q| out[q].iter().map(|&k| edges[k].3).collect());
    let mut ia = IntersectionAutomaton { states, initial, edges, live, kind: IntersectionKind::Empty };
    ia.kind = ia.classify(params, &out);
    ia
}

impl IntersectionAutomaton {
    fn live_out<'a>(&'a self, out: &'a [Vec<usize>], q: usize) -> impl Iterator<Item = usize> + 'a {
        out[q].iter().copied().filter(move |&k| self.live[self.edges[k].3])
    }

    /// Lasso run from `q` along the first live edges; x-side digits.
    fn lasso(&self, out: &[Vec<usize>], q: usize) -> Address {
        let mut seen = HashMap::new();
        let mut digits = Vec::new();
        let mut p = q;
        loop {
            if let Some(&at) = seen.get(&p) {
                let per = digits.split_off(at);
                return Address::fractional(digits, per).expect("cycle is nonempty");
            }
            seen.insert(p, digits.len());
            let k = self.live_out(out, p).next().expect("live state has a live successor");
            digits.push(self.edges[k].1);
            p = self.edges[k].3;
        }
    }

    fn reachable_live(&self, out: &[Vec<usize>]) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut stack: Vec<usize> = self.initial.iter().copied().filter(|&q| self.live[q]).collect();
        for &q in &stack {
            seen[q] = true;
        }
        let mut order = Vec::new();
        while let Some(q) = stack.pop() {
            order.push(q);
            for k in self.live_out(out, q) {
                let t = self.edges[k].3;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        order.sort_unstable();
        order
    }

    fn classify(&self, params: &TileParams, out: &[Vec<usize>]) -> IntersectionKind {
        let reach = self.reachable_live(out);
        if reach.is_empty() {
            return IntersectionKind::Empty;
        }
        // Candidate singleton valuation: one lasso value per state. If it
        // satisfies every live edge equation it is the unique solution of the
        // graph-directed system, so all runs from a state share its value.
        let addr: HashMap<usize, Address> = reach.iter().map(|&q| (q, self.lasso(out, q))).collect();
        let val: HashMap<usize, RationalPoint> = addr.iter().map(|(&q, a)| (q, point_eval(a, params))).collect();
        let consistent = reach.iter().all(|&q| {
            self.live_out(out, q).all(|k| {
                let (_, a, _, t) = self.edges[k];
                crate::numsys::apply_contraction(crate::Digit(a), &val[&t], params) == val[&q]
            })
        });
        let inits: Vec<usize> = self.initial.iter().copied().filter(|&q| self.live[q]).collect();
        if consistent && inits.iter().all(|q| val[q] == val[&inits[0]]) {
            return IntersectionKind::UniquePoint { address: addr[&inits[0]].clone(), point: val[&inits[0]].clone() };
        }
        let on_cycle = self.cycle_states(out, &reach);
        let branching = reach.iter().any(|&q| on_cycle[q] && self.live_out(out, q).count() > 1);
        if branching {
            let mut witnesses: Vec<Address> = inits.iter().map(|q| addr[q].clone()).collect();
            witnesses.extend(reach.iter().filter(|&&q| on_cycle[q]).take(4).map(|q| addr[q].clone()));
            witnesses.sort();
            witnesses.dedup();
            return IntersectionKind::Branching { witnesses };
        }
        let mut runs = Vec::new();
        for &q in &inits {
            self.enumerate_runs(out, q, &mut Vec::new(), &mut HashMap::new(), &mut runs);
        }
        let mut pts: Vec<(Address, RationalPoint)> = runs.into_iter().map(|a| {
            let p = point_eval(&a, params);
            (a, p)
        }).collect();
        pts.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
        pts.dedup_by(|x, y| x.1 == y.1);
        IntersectionKind::FinitePoints(pts)
    }

    /// States lying on a cycle of the live graph.
    fn cycle_states(&self, out: &[Vec<usize>], reach: &[usize]) -> Vec<bool> {
        let n = self.states.len();
        let mut on = vec![false; n];
        for &q in reach {
            // q is on a cycle iff q is reachable from one of its successors
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = self.live_out(out, q).map(|k| self.edges[k].3).collect();
            while let Some(p) = stack.pop() {
                if p == q {
                    on[q] = true;
                    break;
                }
                if seen[p] {
                    continue;
                }
                seen[p] = true;
                stack.extend(self.live_out(out, p).map(|k| self.edges[k].3));
            }
        }
        on
    }

    fn enumerate_runs(
        &self,
        out: &[Vec<usize>],
        q: usize,
        digits: &mut Vec<u32>,
        seen: &mut HashMap<usize, usize>,
        acc: &mut Vec<Address>,
    ) {
        if acc.len() >= MAX_ENUMERATED_RUNS {
            return;
        }
        if let Some(&at) = seen.get(&q) {
            let per = digits[at..].to_vec();
            acc.push(Address::fractional(digits[..at].to_vec(), per).expect("nonempty"));
            return;
        }
        seen.insert(q, digits.len());
        let ks: Vec<usize> = self.live_out(out, q).collect();
        for k in ks {
            digits.push(self.edges[k].1);
            self.enumerate_runs(out, self.edges[k].3, digits, seen, acc);
            digits.pop();
        }
        seen.remove(&q);
    }

    fn out_lists(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.states.len()];
        for (k, e) in self.edges.iter().enumerate() {
            out[e.0].push(k);
        }
        out
    }

    /// For every reachable live state on a cycle: one accepted run through it
    /// (x-side digits: shortest prefix from an initial state, then the lasso)
    /// and the value of that run.
    pub fn cycle_valuations(&self, params: &TileParams) -> Vec<(usize, Address, RationalPoint)> {
        let out = self.out_lists();
        let reach = self.reachable_live(&out);
        let on_cycle = self.cycle_states(&out, &reach);
        // shortest x-prefix to each state
        let mut prefix: HashMap<usize, Vec<u32>> = HashMap::new();
        let mut queue = VecDeque::new();
        for &q in self.initial.iter().filter(|&&q| self.live[q]) {
            if prefix.insert(q, Vec::new()).is_none() {
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for k in self.live_out(&out, q) {
                let t = self.edges[k].3;
                if !prefix.contains_key(&t) {
                    let mut w = prefix[&q].clone();
                    w.push(self.edges[k].1);
                    prefix.insert(t, w);
                    queue.push_back(t);
                }
            }
        }
        reach
            .iter()
            .filter(|&&q| on_cycle[q])
            .map(|&q| {
                let addr = self.lasso(&out, q).prepend(&prefix[&q]);
                let pt = point_eval(&addr, params);
                (q, addr, pt)
            })
            .collect()
    }

    pub fn live_count(&self) -> usize {
        self.live.iter().filter(|&&x| x).count()
    }

    /// Product states reachable by reading exactly `n` digit pairs (without
    /// requiring liveness), reported as the pairs of prefixes.
    pub fn reachable_prefix_pairs(&self, n: usize) -> BTreeSet<(Vec<u32>, Vec<u32>)> {
        let mut cur: BTreeSet<(usize, Vec<u32>, Vec<u32>)> =
            self.initial.iter().map(|&q| (q, Vec::new(), Vec::new())).collect();
        for _ in 0..n {
            let mut next = BTreeSet::new();
            for (q, u, v) in &cur {
                for e in self.edges.iter().filter(|e| e.0 == *q) {
                    let (mut u2, mut v2) = (u.clone(), v.clone());
                    u2.push(e.1);
                    v2.push(e.2);
                    next.insert((e.3, u2, v2));
                }
            }
            cur = next;
        }
        cur.into_iter().map(|(_, u, v)| (u, v)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match &self.kind {
            IntersectionKind::Empty => json!({"label": "EMPTY"}),
            IntersectionKind::UniquePoint { address, point } => json!({
                "label": "UNIQUE_POINT",
                "address": address.to_string(),
                "point": [point.x.to_string(), point.y.to_string()],
            }),
            IntersectionKind::FinitePoints(ps) => json!({
                "label": "FINITE_POINTS",
                "points": ps.iter().map(|(a, p)| json!({"address": a.to_string(), "point": [p.x.to_string(), p.y.to_string()]})).collect::<Vec<_>>(),
            }),
            IntersectionKind::Branching { witnesses } => json!({
                "label": "BRANCHING",
                "note": "run-infinite; point cardinality not decided",
                "witnesses": witnesses.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            }),
        };
        json!({
            "states": self.states.iter().enumerate().map(|(i, (q1, q2, s))| json!({
                "id": i, "q1": q1, "q2": q2, "s": s, "live": self.live[i],
            })).collect::<Vec<_>>(),
            "initial": self.initial,
            "transitions": self.edges.iter().map(|e| json!([e.0, e.1, e.2, e.3])).collect::<Vec<_>>(),
            "result": kind,
        })
    }
}

/// Convenience: result only.
pub fn intersection_kind(
    l1: &DigitAutomaton,
    l2: &DigitAutomaton,
    params: &TileParams,
    neighbors: &NeighborSet,
    start: [i64; 2],
) -> Result<IntersectionKind> {
    Ok(intersect_languages(l1, l2, params, neighbors, start).kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neighbors::neighbor_set_formula;

    #[test]
    fn cylinder_membership() {
        let c = DigitAutomaton::cylinder(&[1, 2], 3);
        assert!(c.accepts(&"12(0)".parse().unwrap()));
        assert!(!c.accepts(&"1(0)".parse().unwrap()));
        assert!(c.is_deterministic());
        assert!(DigitAutomaton::full(3).union_is_universal(&c, 3));
        assert!(!c.union_is_universal(&DigitAutomaton::cylinder(&[0], 3), 3));
        assert!(c.included_in(&DigitAutomaton::cylinder(&[1], 3)).is_ok());
        assert_eq!(DigitAutomaton::cylinder(&[1], 3).included_in(&c), Err(vec![1, 0]));
    }

    #[test]
    fn adjacent_tiles_share_a_continuum() {
        let p = TileParams::new(5, 5).unwrap();
        let nb = neighbor_set_formula(&p).unwrap();
        let full = DigitAutomaton::full(5);
        let ia = intersect_languages(&full, &full, &p, &nb, [1, 0]);
        assert_eq!(ia.kind.label(), "BRANCHING");
        let ia = intersect_languages(&full, &full, &p, &nb, [0, 0]);
        assert_eq!(ia.kind.label(), "BRANCHING");
    }

    #[test]
    fn distant_cylinders_are_disjoint() {
        let p = TileParams::new(5, 5).unwrap();
        let nb = neighbor_set_formula(&p).unwrap();
        let ia = intersect_languages(
            &DigitAutomaton::cylinder(&[3], 5),
            &DigitAutomaton::cylinder(&[0], 5),
            &p,
            &nb,
            [0, 0],
        );
        assert_eq!(ia.kind, IntersectionKind::Empty);
    }

    #[test]
    fn a_point_meets_itself_once() {
        let p = TileParams::new(4, 5).unwrap();
        let nb = neighbor_set_formula(&p).unwrap();
        let single = DigitAutomaton::new(vec!["a".into(), "b".into()], vec![0], vec![vec![(4, 1)], vec![(2, 1)]]);
        let ia = intersect_languages(&single, &single, &p, &nb, [0, 0]);
        match ia.kind {
            IntersectionKind::UniquePoint { address, .. } => assert_eq!(address.to_string(), "0.4(2)"),
            k => panic!("{k:?}"),
        }
    }
}

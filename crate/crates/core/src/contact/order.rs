use std::collections::HashMap;

use serde_json::json;

use super::{ContactGraph, Edge, STATE_NAMES};
use crate::error::{Error, Result};
use crate::numsys::{apply_contraction, point_eval, Address, Digit};
use crate::RationalPoint;

/// `G°`: the contact graph with a total order on the outgoing edges of every
/// state, so that the subpieces of each `K_s` follow each other continuously
/// and the six pieces close up around the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedContactGraph {
    pub graph: ContactGraph,
    /// `order[i][k]` is the index in `graph.edges` of the edge with order `k + 1` at state `i`.
    pub order: Vec<Vec<usize>>,
    /// `ψ(i; 𝟏̄)` for each state.
    pub first_points: Vec<RationalPoint>,
}

impl OrderedContactGraph {
    pub fn params(&self) -> &crate::TileParams {
        &self.graph.params
    }

    pub fn out_degree(&self, s: usize) -> usize {
        self.order[s].len()
    }

    /// The edge of order `k` (0-based) at state `s`.
    pub fn edge(&self, s: usize, k: usize) -> &Edge {
        &self.graph.edges[self.order[s][k]]
    }

    /// `ψ(i; 𝐨̄_max)`, which equals `ψ(i+1; 𝟏̄)`.
    pub fn last_point(&self, s: usize) -> &RationalPoint {
        &self.first_points[(s + 1) % 6]
    }

    /// Order tuple used for tie-breaking: edge indices per state.
    fn key(&self) -> Vec<Vec<usize>> {
        self.order.clone()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "cnstile.ordered-contact-graph/v1",
            "a": self.graph.params.a,
            "b": self.graph.params.b,
            "states": (0..6).map(|i| json!({
                "index": i + 1,
                "name": STATE_NAMES[i],
                "vector": self.graph.states[i],
                "edges": self.order[i].iter().enumerate().map(|(k, &ei)| {
                    let e = &self.graph.edges[ei];
                    json!({"order": k + 1, "target": e.target + 1, "a": e.digit, "a_prime": e.digit2})
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Go {\n  rankdir=LR;\n");
        for i in 0..6 {
            s += &format!("  s{} [label=\"{}: {}\"];\n", i + 1, i + 1, STATE_NAMES[i]);
        }
        for i in 0..6 {
            for (k, &ei) in self.order[i].iter().enumerate() {
                let e = &self.graph.edges[ei];
                s += &format!("  s{} -> s{} [label=\"{}|{}\"];\n", i + 1, e.target + 1, e.digit, k + 1);
            }
        }
        s + "}\n"
    }
}

/// `ψ(i; 𝟏̄)` for the first-edge choice `first`, as an address.
fn first_walk_address(graph: &ContactGraph, first: &[usize; 6], i: usize) -> Address {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut s = i;
    loop {
        if let Some(&pos) = seen.get(&s) {
            let per = digits.split_off(pos);
            return Address::fractional(digits, per).expect("cycle is nonempty");
        }
        seen.insert(s, digits.len());
        let e = &graph.edges[first[s]];
        digits.push(e.digit);
        s = e.target;
    }
}

/// All edge orders of one state that start with `first` and form a chain of
/// subpieces from `start` to `end`.
fn chain_orders(
    out: &[usize],
    first: usize,
    seg: &HashMap<usize, (RationalPoint, RationalPoint)>,
    start: &RationalPoint,
    end: &RationalPoint,
) -> Vec<Vec<usize>> {
    fn dfs(
        out: &[usize],
        seg: &HashMap<usize, (RationalPoint, RationalPoint)>,
        used: &mut Vec<bool>,
        path: &mut Vec<usize>,
        at: &RationalPoint,
        end: &RationalPoint,
        acc: &mut Vec<Vec<usize>>,
    ) {
        if path.len() == out.len() {
            if at == end {
                acc.push(path.clone());
            }
            return;
        }
        for k in 0..out.len() {
            if used[k] || seg[&out[k]].0 != *at {
                continue;
            }
            used[k] = true;
            path.push(out[k]);
            let next = seg[&out[k]].1.clone();
            dfs(out, seg, used, path, &next, end, acc);
            path.pop();
            used[k] = false;
        }
    }
    let Some(fk) = out.iter().position(|&e| e == first) else {
        return vec![];
    };
    if seg[&first].0 != *start {
        return vec![];
    }
    let mut used = vec![false; out.len()];
    used[fk] = true;
    let mut path = vec![first];
    let mut acc = Vec::new();
    dfs(out, seg, &mut used, &mut path, &seg[&first].1.clone(), end, &mut acc);
    acc
}

/// All edge orders satisfying the continuity and closure conditions whose
/// first edges are flip-symmetric.
pub fn consistent_orderings(graph: &ContactGraph) -> Vec<OrderedContactGraph> {
    let params = &graph.params;
    let outs: Vec<Vec<usize>> = (0..6).map(|s| graph.out_edges(s).map(|(i, _)| i).collect()).collect();
    let index_of = |e: &Edge| graph.edges.binary_search(e).expect("flip-symmetric graph");
    let mut found = Vec::new();
    for &f0 in &outs[0] {
        for &f1 in &outs[1] {
            for &f2 in &outs[2] {
                let mut first = [f0, f1, f2, 0, 0, 0];
                for i in 0..3 {
                    first[i + 3] = index_of(&graph.flip_edge(&graph.edges[first[i]]));
                }
                let v: Vec<RationalPoint> = (0..6)
                    .map(|i| point_eval(&first_walk_address(graph, &first, i), params))
                    .collect();
                let seg: HashMap<usize, (RationalPoint, RationalPoint)> = graph
                    .edges
                    .iter()
                    .enumerate()
                    .map(|(k, e)| {
                        let a = Digit(e.digit);
                        (
                            k,
                            (
                                apply_contraction(a, &v[e.target], params),
                                apply_contraction(a, &v[(e.target + 1) % 6], params),
                            ),
                        )
                    })
                    .collect();
                let mut per_state = Vec::new();
                for i in 0..6 {
                    let c = chain_orders(&outs[i], first[i], &seg, &v[i], &v[(i + 1) % 6]);
                    if c.is_empty() {
                        break;
                    }
                    per_state.push(c);
                }
                if per_state.len() < 6 {
                    continue;
                }
                let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![]];
                for c in &per_state {
                    combos = combos
                        .into_iter()
                        .flat_map(|pre| {
                            c.iter().map(move |o| {
                                let mut p = pre.clone();
                                p.push(o.clone());
                                p
                            })
                        })
                        .collect();
                }
                for order in combos {
                    found.push(OrderedContactGraph { graph: graph.clone(), order, first_points: v.clone() });
                }
            }
        }
    }
    found.sort_by_key(|o| o.key());
    found
}

/// Derives `G°`. When `2A − B = 3` and `A ≠ B`, the ordering that reproduces
/// the endpoint walk table of the chain construction is preferred; otherwise
/// the lexicographically smallest consistent ordering is returned.
pub fn derive_order_extension(graph: &ContactGraph) -> Result<OrderedContactGraph> {
    if !graph.is_strongly_connected() {
        return Err(Error::NotIrreducible);
    }
    let all = consistent_orderings(graph);
    let p = graph.params;
    if p.excess() == 3 && p.a != p.b {
        if let Some(o) = all.iter().find(|o| crate::chains::table_calibrates(o)) {
            return Ok(o.clone());
        }
    }
    all.into_iter().next().ok_or(Error::NoConsistentOrdering)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::build_contact_graph;
    use crate::TileParams;

    #[test]
    fn orderings_exist_on_small_grid() {
        for b in 2..=7 {
            for a in 1..=b {
                let g = build_contact_graph(&TileParams::new(a, b).unwrap()).unwrap();
                let all = consistent_orderings(&g);
                assert!(!all.is_empty(), "A={a} B={b}");
            }
        }
    }
}

//! The contact graph `G` of the boundary, its ordered extension `G°`, the
//! Perron data of its incidence matrix and the boundary parametrization
//! `C = ψ∘φ⁽¹⁾` with its polygonal approximations.

mod approx;
mod gifs;
mod order;
mod perron;
mod walk;

pub use approx::{approx_boundary, hausdorff_distance, polygon_is_simple, BoundaryApprox, DEFAULT_WALK_BUDGET};
pub use gifs::{boundary_gifs_check, GifsReport};
pub use order::{consistent_orderings, derive_order_extension, OrderedContactGraph};
pub use perron::{perron_data, PerronData};
pub use walk::{boundary_point, param_to_walk, psi, walk_to_param, ParamValue, Walk};

use std::collections::VecDeque;

use serde_json::json;

use crate::error::{Error, Result};
use crate::neighbors::{p_vec, q_vec, r_vec};
use crate::numsys::TileParams;

/// Display names of the six states in the fixed order `K₁ … K₆`.
pub const STATE_NAMES: [&str; 6] = ["-R", "Q1", "-P1", "R", "-Q1", "P1"];

/// One edge `s →^{a|a′} s′` with `M·s + a′ = s′ + a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub digit: u32,
    pub digit2: u32,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactGraph {
    pub params: TileParams,
    /// State vectors, indexed in the order `−R, Q₁, −P₁, R, −Q₁, P₁`;
    /// state `i + 3` is the negative of state `i`.
    pub states: [[i64; 2]; 6],
    /// Edges sorted by `(source, a, a′)`.
    pub edges: Vec<Edge>,
}

/// Index of the negated state.
pub fn neg_state(i: usize) -> usize {
    (i + 3) % 6
}

pub fn build_contact_graph(params: &TileParams) -> Result<ContactGraph> {
    if params.a < 1 {
        return Err(Error::WrongRegime { required: "0 < A ≤ B", a: params.a, b: params.b });
    }
    let a = params.a;
    let neg = |v: [i64; 2]| [-v[0], -v[1]];
    let (p1, q1, r) = (p_vec(1, a), q_vec(1, a), r_vec(a));
    let states = [neg(r), q1, neg(p1), r, neg(q1), p1];
    let mut edges = Vec::new();
    let b = params.base();
    for (si, &s) in states.iter().enumerate() {
        let ms = params.mul_int(s);
        for d in 0..b {
            for d2 in 0..b {
                let t = [ms[0] + d2 as i64 - d as i64, ms[1]];
                if let Some(ti) = states.iter().position(|&x| x == t) {
                    edges.push(Edge { source: si, digit: d, digit2: d2, target: ti });
                }
            }
        }
    }
    Ok(ContactGraph { params: *params, states, edges })
}

impl ContactGraph {
    pub fn out_edges(&self, s: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.source == s)
    }

    pub fn out_degree(&self, s: usize) -> usize {
        self.out_edges(s).count()
    }

    /// `𝐃[t][s]` = number of edges `s → t`, so that `u·𝐃 = β·u` for the
    /// interval lengths `u`.
    pub fn incidence(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; 6]; 6];
        for e in &self.edges {
            d[e.target][e.source] += 1;
        }
        d
    }

    pub fn is_strongly_connected(&self) -> bool {
        let reach = |forward: bool| -> bool {
            let mut seen = [false; 6];
            seen[0] = true;
            let mut q = VecDeque::from([0usize]);
            while let Some(s) = q.pop_front() {
                for e in &self.edges {
                    let (from, to) = if forward { (e.source, e.target) } else { (e.target, e.source) };
                    if from == s && !seen[to] {
                        seen[to] = true;
                        q.push_back(to);
                    }
                }
            }
            seen.iter().all(|&x| x)
        };
        reach(true) && reach(false)
    }

    /// The flip image `(−s, B−1−a, B−1−a′, −s′)` of an edge.
    pub fn flip_edge(&self, e: &Edge) -> Edge {
        let top = self.params.max_digit();
        Edge {
            source: neg_state(e.source),
            digit: top - e.digit,
            digit2: top - e.digit2,
            target: neg_state(e.target),
        }
    }

    pub fn is_flip_symmetric(&self) -> bool {
        self.edges.iter().all(|e| self.edges.binary_search(&self.flip_edge(e)).is_ok())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "cnstile.contact-graph/v1",
            "a": self.params.a,
            "b": self.params.b,
            "states": (0..6).map(|i| json!({
                "index": i + 1,
                "name": STATE_NAMES[i],
                "vector": self.states[i],
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "source": e.source + 1,
                "target": e.target + 1,
                "a": e.digit,
                "a_prime": e.digit2,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n  rankdir=LR;\n");
        for i in 0..6 {
            s += &format!(
                "  s{} [label=\"{} ({},{})\"];\n",
                i + 1,
                STATE_NAMES[i],
                self.states[i][0],
                self.states[i][1]
            );
        }
        for e in &self.edges {
            s += &format!("  s{} -> s{} [label=\"{}|{}\"];\n", e.source + 1, e.target + 1, e.digit, e.digit2);
        }
        s + "}\n"
    }
}

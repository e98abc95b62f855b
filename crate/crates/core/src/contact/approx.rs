use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::json;

use super::OrderedContactGraph;
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::RationalPoint;

pub const DEFAULT_WALK_BUDGET: u128 = 1_000_000;
const SAMPLES: usize = 8;

/// The polygon `∂𝒯ₙ` with its vertex list in parameter order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryApprox {
    pub n: usize,
    /// Number of length-`n` walks, i.e. vertices before merging.
    pub walk_count: u128,
    /// Vertices with consecutive duplicates merged (cyclically).
    pub vertices: Vec<RationalPoint>,
    /// `ψ(w_k & 𝐨̄_max) = ψ(w_{k+1} & 𝟏̄)` for all consecutive walks, cyclically.
    pub endpoints_match: bool,
}

impl BoundaryApprox {
    pub fn float_vertices(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|v| v.to_f64()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "cnstile.approx/v1",
            "n": self.n,
            "walk_count": self.walk_count.to_string(),
            "vertex_count": self.vertices.len(),
            "endpoints_match": self.endpoints_match,
            "vertices": self.vertices.iter().map(|v| [v.x.to_string(), v.y.to_string()]).collect::<Vec<_>>(),
        })
    }
}

/// `m_n`: the sum of all entries of `𝐃ⁿ`.
pub fn walk_count(g: &OrderedContactGraph, n: usize) -> u128 {
    let mut row = vec![1u128; 6];
    for _ in 0..n {
        let mut next = vec![0u128; 6];
        for e in &g.graph.edges {
            next[e.source] = next[e.source].saturating_add(row[e.target]);
        }
        row = next;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Vertices `ψ(w & 𝟏̄)` of all length-`n` walks in lexicographic order.
/// Each one is `Σ_{k≤n} M^{−k}(a_k, 0)ᵀ + M^{−n}·ψ(target; 𝟏̄)`.
pub fn approx_boundary(g: &OrderedContactGraph, n: usize, budget: u128) -> Result<BoundaryApprox> {
    let count = walk_count(g, n);
    if count > budget {
        return Err(Error::BudgetExceeded { needed: count, budget });
    }
    let params = g.params();
    let m_inv: Mat2<BigRational> = params.companion_inverse();
    let mut pows = vec![Mat2::identity()];
    for k in 0..n {
        pows.push(pows[k].mul(&m_inv));
    }
    let cols: Vec<RationalPoint> = pows.iter().map(|p| p.mul_vec(&Vec2::digit(1))).collect();
    let shifted: Vec<RationalPoint> = g.first_points.iter().map(|v| pows[n].mul_vec(v)).collect();

    let mut starts: Vec<RationalPoint> = Vec::with_capacity(count as usize);
    let mut ends: Vec<RationalPoint> = Vec::with_capacity(count as usize);
    struct Ctx<'a> {
        g: &'a OrderedContactGraph,
        n: usize,
        cols: &'a [RationalPoint],
        shifted: &'a [RationalPoint],
    }
    fn dfs(c: &Ctx, s: usize, depth: usize, p: &RationalPoint, starts: &mut Vec<RationalPoint>, ends: &mut Vec<RationalPoint>) {
        if depth == c.n {
            starts.push(p + &c.shifted[s]);
            ends.push(p + &c.shifted[(s + 1) % 6]);
            return;
        }
        for k in 0..c.g.out_degree(s) {
            let e = c.g.edge(s, k);
            let a = BigRational::from_integer(e.digit.into());
            let q = p + &c.cols[depth + 1].scale(&a);
            dfs(c, e.target, depth + 1, &q, starts, ends);
        }
    }
    let ctx = Ctx { g, n, cols: &cols, shifted: &shifted };
    for s in 0..6 {
        dfs(&ctx, s, 0, &Vec2::zero(), &mut starts, &mut ends);
    }
    let len = starts.len();
    let endpoints_match = (0..len).all(|k| ends[k] == starts[(k + 1) % len]);
    let mut vertices: Vec<RationalPoint> = Vec::with_capacity(len);
    for v in starts {
        if vertices.last() != Some(&v) {
            vertices.push(v);
        }
    }
    while vertices.len() > 1 && vertices.last() == vertices.first() {
        vertices.pop();
    }
    Ok(BoundaryApprox { n, walk_count: count, vertices, endpoints_match })
}

fn orient(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Ordering {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    v.cmp(&BigRational::zero())
}

fn on_segment(a: &RationalPoint, b: &RationalPoint, p: &RationalPoint) -> bool {
    p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Float orientation with a certified sign when far from zero.
fn orient_f(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<Ordering> {
    let v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let scale = [a, b, c].iter().map(|p| p[0].abs().max(p[1].abs())).fold(1.0, f64::max);
    if v.abs() > 1e-9 * scale * scale {
        Some(v.partial_cmp(&0.0).expect("finite"))
    } else {
        None
    }
}

/// Decides disjointness of two segments in floating point when every
/// orientation is well separated from zero.
fn float_disjoint(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Option<bool> {
    let o = [orient_f(a, b, c)?, orient_f(a, b, d)?, orient_f(c, d, a)?, orient_f(c, d, b)?];
    Some(!(o[0] != o[1] && o[2] != o[3]))
}

fn segments_intersect(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint, d: &RationalPoint) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        return true;
    }
    (o1 == Ordering::Equal && on_segment(a, b, c))
        || (o2 == Ordering::Equal && on_segment(a, b, d))
        || (o3 == Ordering::Equal && on_segment(c, d, a))
        || (o4 == Ordering::Equal && on_segment(c, d, b))
}

/// Uniform grid over float bounding boxes, used as a conservative filter.
struct Grid {
    x0: f64,
    y0: f64,
    h: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl Grid {
    fn new(boxes: &[[f64; 4]]) -> Grid {
        let x0 = boxes.iter().map(|b| b[0]).fold(f64::INFINITY, f64::min);
        let y0 = boxes.iter().map(|b| b[1]).fold(f64::INFINITY, f64::min);
        let x1 = boxes.iter().map(|b| b[2]).fold(f64::NEG_INFINITY, f64::max);
        let y1 = boxes.iter().map(|b| b[3]).fold(f64::NEG_INFINITY, f64::max);
        // cells about the size of the median box
        let mut sizes: Vec<f64> = boxes.iter().map(|b| (b[2] - b[0]).max(b[3] - b[1])).collect();
        sizes.sort_by(f64::total_cmp);
        let mean = sizes.get(sizes.len() / 2).copied().unwrap_or(1.0);
        let side = (boxes.len() as f64).sqrt().ceil().max(1.0);
        let h = mean.max((x1 - x0).max(y1 - y0) / (16.0 * side)).max(1e-12);
        let mut g = Grid { x0, y0, h, cells: HashMap::new() };
        for (i, b) in boxes.iter().enumerate() {
            for key in g.keys(b) {
                g.cells.entry(key).or_default().push(i);
            }
        }
        g
    }

    /// Inclusive cell range `[ix0, iy0, ix1, iy1]` covered by a box.
    fn range(&self, b: &[f64; 4]) -> [i64; 4] {
        let c = |v: f64, o: f64| ((v - o) / self.h).floor() as i64;
        [c(b[0], self.x0), c(b[1], self.y0), c(b[2], self.x0), c(b[3], self.y0)]
    }

    fn keys(&self, b: &[f64; 4]) -> Vec<(i64, i64)> {
        let r = self.range(b);
        let mut out = Vec::new();
        for i in r[0]..=r[2] {
            for j in r[1]..=r[3] {
                out.push((i, j));
            }
        }
        out
    }
}

fn padded_box(p: [f64; 2], q: [f64; 2]) -> [f64; 4] {
    let pad = 1e-9 * (1.0 + p[0].abs().max(p[1].abs()).max(q[0].abs()).max(q[1].abs()));
    [p[0].min(q[0]) - pad, p[1].min(q[1]) - pad, p[0].max(q[0]) + pad, p[1].max(q[1]) + pad]
}

/// Exact test that the closed polyline through `v` has no self-intersection:
/// non-adjacent edges are disjoint and adjacent edges meet only at their
/// shared vertex.
pub fn polygon_is_simple(v: &[RationalPoint]) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    let fv: Vec<[f64; 2]> = v.iter().map(|p| p.to_f64()).collect();
    let boxes: Vec<[f64; 4]> = (0..n).map(|i| padded_box(fv[i], fv[(i + 1) % n])).collect();
    let grid = Grid::new(&boxes);
    let ranges: Vec<[i64; 4]> = boxes.iter().map(|b| grid.range(b)).collect();
    for (&cell, idx) in &grid.cells {
        for (x, &i) in idx.iter().enumerate() {
            for &j in &idx[x + 1..] {
                let (i, j) = (i.min(j), i.max(j));
                // visit each pair once: in the first cell common to both boxes
                let first = (ranges[i][0].max(ranges[j][0]), ranges[i][1].max(ranges[j][1]));
                if first != cell {
                    continue;
                }
                let (a, b) = (&v[i], &v[(i + 1) % n]);
                let (c, d) = (&v[j], &v[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // shared vertex: b == c (or d == a when wrapping)
                    let (p, shared, q) = if j == i + 1 { (a, b, d) } else { (c, a, b) };
                    if orient(p, shared, q) == Ordering::Equal {
                        let back = (&shared.x - &p.x) * (&q.x - &shared.x) + (&shared.y - &p.y) * (&q.y - &shared.y);
                        if back.is_negative() {
                            return false;
                        }
                    }
                    if n == 3 {
                        continue;
                    }
                } else if float_disjoint(fv[i], fv[(i + 1) % n], fv[j], fv[(j + 1) % n]) == Some(true) {
                    continue;
                } else if segments_intersect(a, b, c, d) {
                    return false;
                }
            }
        }
    }
    true
}

fn seg_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2).clamp(0.0, 1.0) };
    let (x, y) = (a[0] + t * dx - p[0], a[1] + t * dy - p[1]);
    (x * x + y * y).sqrt()
}

fn directed(a: &[[f64; 2]], b: &[[f64; 2]], samples: usize) -> f64 {
    let nb = b.len();
    let boxes: Vec<[f64; 4]> = (0..nb).map(|i| padded_box(b[i], b[(i + 1) % nb])).collect();
    let grid = Grid::new(&boxes);
    let mut worst: f64 = 0.0;
    let na = a.len();
    for i in 0..na {
        let (p, q) = (a[i], a[(i + 1) % na]);
        for k in 0..samples {
            let t = k as f64 / samples as f64;
            let x = [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
            let cx = ((x[0] - grid.x0) / grid.h).floor() as i64;
            let cy = ((x[1] - grid.y0) / grid.h).floor() as i64;
            let mut best = f64::INFINITY;
            let mut r = 0i64;
            loop {
                for ix in cx - r..=cx + r {
                    for iy in cy - r..=cy + r {
                        if (ix - cx).abs() != r && (iy - cy).abs() != r {
                            continue;
                        }
                        if let Some(segs) = grid.cells.get(&(ix, iy)) {
                            for &s in segs {
                                best = best.min(seg_dist(x, b[s], b[(s + 1) % nb]));
                            }
                        }
                    }
                }
                if best <= r as f64 * grid.h {
                    break;
                }
                r += 1;
                if r > 32 {
                    for s in 0..nb {
                        best = best.min(seg_dist(x, b[s], b[(s + 1) % nb]));
                    }
                    break;
                }
            }
            worst = worst.max(best);
        }
    }
    worst
}

/// Hausdorff distance between two closed polylines, estimated by sampling
/// each segment; a floating point diagnostic.
pub fn hausdorff_distance(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    directed(a, b, SAMPLES).max(directed(b, a, SAMPLES))
}

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::ContactGraph;

/// Diagnostic iteration of `K_s = ⋃_{s→ᵃs′} M⁻¹(K_{s′} + a)` on point clouds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GifsReport {
    pub depth: usize,
    /// `max_s d_H(K_s⁽ᵏ⁾, K_s⁽ᵏ⁺¹⁾)` for `k = 0 … depth − 1`.
    pub successive_distances: Vec<f64>,
    pub all_nonempty: bool,
    /// `max_s d_H` between the final iterates of two different seeds.
    pub seed_discrepancy: f64,
    pub points_per_state: Vec<usize>,
}

/// Points are snapped to this grid to keep the clouds bounded.
const RESOLUTION: f64 = 1.0 / 512.0;

type Cloud = Vec<[f64; 2]>;

fn snap(cloud: Cloud) -> Cloud {
    let mut seen = HashSet::new();
    cloud
        .into_iter()
        .filter(|p| seen.insert(((p[0] / RESOLUTION).round() as i64, (p[1] / RESOLUTION).round() as i64)))
        .collect()
}

fn step(g: &ContactGraph, clouds: &[Cloud]) -> Vec<Cloud> {
    let b = g.params.b as f64;
    let a = g.params.a as f64;
    // M⁻¹ = (1/B)[[−A, B], [−1, 0]]
    let f = |p: [f64; 2], d: u32| {
        let x = p[0] + d as f64;
        [(-a * x + b * p[1]) / b, -x / b]
    };
    (0..6)
        .map(|s| {
            let mut out = Vec::new();
            for e in g.edges.iter().filter(|e| e.source == s) {
                out.extend(clouds[e.target].iter().map(|&p| f(p, e.digit)));
            }
            snap(out)
        })
        .collect()
}

fn directed(a: &Cloud, b: &Cloud) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let h = 4.0 * RESOLUTION;
    let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in b.iter().enumerate() {
        cells.entry(((p[0] / h).floor() as i64, (p[1] / h).floor() as i64)).or_default().push(i);
    }
    let mut worst: f64 = 0.0;
    for p in a {
        let (cx, cy) = ((p[0] / h).floor() as i64, (p[1] / h).floor() as i64);
        let mut best = f64::INFINITY;
        let mut r = 0i64;
        loop {
            for ix in cx - r..=cx + r {
                for iy in cy - r..=cy + r {
                    if (ix - cx).abs() != r && (iy - cy).abs() != r {
                        continue;
                    }
                    for &j in cells.get(&(ix, iy)).map(Vec::as_slice).unwrap_or(&[]) {
                        let q = b[j];
                        best = best.min(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt());
                    }
                }
            }
            if best <= r as f64 * h {
                break;
            }
            r += 1;
            if r > 32 {
                // far from everything: a linear scan is cheaper than more rings
                for q in b {
                    best = best.min(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt());
                }
                break;
            }
        }
        worst = worst.max(best);
    }
    worst
}

fn hausdorff(a: &Cloud, b: &Cloud) -> f64 {
    directed(a, b).max(directed(b, a))
}

fn box_seed(lo: f64, hi: f64) -> Cloud {
    let k = 4;
    let mut c = Vec::new();
    for i in 0..=k {
        for j in 0..=k {
            let t = |m: usize| lo + (hi - lo) * m as f64 / k as f64;
            c.push([t(i), t(j)]);
        }
    }
    c
}

pub fn boundary_gifs_check(g: &ContactGraph, depth: usize) -> GifsReport {
    let depth = depth.max(1);
    let mut clouds: Vec<Cloud> = vec![box_seed(0.0, 1.0); 6];
    let mut other: Vec<Cloud> = vec![box_seed(-2.0, 3.0); 6];
    let mut successive_distances = Vec::with_capacity(depth);
    for _ in 0..depth {
        let next = step(g, &clouds);
        let d = (0..6).map(|s| hausdorff(&clouds[s], &next[s])).fold(0.0, f64::max);
        successive_distances.push(d);
        clouds = next;
        other = step(g, &other);
    }
    let seed_discrepancy = (0..6).map(|s| hausdorff(&clouds[s], &other[s])).fold(0.0, f64::max);
    GifsReport {
        depth,
        successive_distances,
        all_nonempty: clouds.iter().all(|c| !c.is_empty()),
        seed_discrepancy,
        points_per_state: clouds.iter().map(Vec::len).collect(),
    }
}

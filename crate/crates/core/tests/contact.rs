use std::collections::HashSet;

use cnstile::contact::*;
use cnstile::numsys::point_eval;
use cnstile::{Address, RationalPoint, TileParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(a: i64, b: i64) -> TileParams {
    TileParams::new(a, b).unwrap()
}

fn go(a: i64, b: i64) -> OrderedContactGraph {
    derive_order_extension(&build_contact_graph(&p(a, b)).unwrap()).unwrap()
}

fn pt(g: &OrderedContactGraph, w: &Walk) -> RationalPoint {
    point_eval(&psi(w, g).unwrap(), g.params())
}

fn grid() -> impl Iterator<Item = (i64, i64)> {
    (2..=12).flat_map(|b| (1..=b).map(move |a| (a, b)))
}

#[test]
fn edges_are_exactly_the_congruence_solutions() {
    for (a, b) in grid() {
        let g = build_contact_graph(&p(a, b)).unwrap();
        let mut want = HashSet::new();
        for (si, s) in g.states.iter().enumerate() {
            // M·s + (a′ − a, 0) with M = [[0, −B], [1, −A]]
            let ms = [-b * s[1], s[0] - a * s[1]];
            for d in 0..b {
                for d2 in 0..b {
                    let t = [ms[0] + d2 - d, ms[1]];
                    if let Some(ti) = g.states.iter().position(|&x| x == t) {
                        want.insert((si, d as u32, d2 as u32, ti));
                    }
                }
            }
        }
        let got: HashSet<_> = g.edges.iter().map(|e| (e.source, e.digit, e.digit2, e.target)).collect();
        assert_eq!(got, want, "({a},{b})");
        assert!(g.is_strongly_connected() && g.is_flip_symmetric(), "({a},{b})");
    }
}

#[test]
fn p1_to_minus_r() {
    // P₁ is state 6, −R is state 1
    let g = build_contact_graph(&p(4, 5)).unwrap();
    let e: Vec<_> = g.edges.iter().filter(|e| e.source == 5 && e.target == 0).map(|e| (e.digit, e.digit2)).collect();
    assert_eq!(e, vec![(0, 4)]);
    let g = build_contact_graph(&p(5, 5)).unwrap();
    assert!(!g.edges.iter().any(|e| e.source == 5 && e.target == 0));
    assert!(!g.edges.iter().any(|e| e.source == 2 && e.target == 3));
}

#[test]
fn gifs_iterates() {
    let r = boundary_gifs_check(&build_contact_graph(&p(2, 2)).unwrap(), 8);
    assert!(r.all_nonempty);
    assert!(r.successive_distances[0] > r.successive_distances[4]);
}

#[test]
fn perron_root_matches_power_iteration() {
    let g = build_contact_graph(&p(4, 5)).unwrap();
    let d = perron_data(&g).unwrap();
    assert!(d.verify());
    let mut x = vec![1.0f64; 6];
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let y: Vec<f64> = (0..6).map(|t| (0..6).map(|s| d.incidence[t][s] as f64 * x[s]).sum()).collect();
        lambda = y.iter().sum::<f64>() / x.iter().sum::<f64>();
        let n: f64 = y.iter().sum();
        x = y.iter().map(|v| v / n).collect();
    }
    assert!((d.field.beta_f64() - lambda).abs() < 1e-9, "{} vs {lambda}", d.field.beta_f64());
    for (a, b) in grid() {
        assert!(perron_data(&build_contact_graph(&p(a, b)).unwrap()).unwrap().verify(), "({a},{b})");
    }
}

#[test]
fn table_walk_decodings() {
    let g = go(4, 5);
    let dec = |w: &str| psi(&w.parse().unwrap(), &g).unwrap().to_string();
    assert_eq!(dec("3;2,1,3,(2)"), "0.440(04)");
    assert_eq!(dec("5;2,(6)"), "0.4(2)");
    assert_eq!(dec("6;1,6,4,(2)"), "0.123(04)");
}

#[test]
fn ordering_endpoints_chain() {
    for (a, b) in grid() {
        let g = go(a, b);
        for s in 0..6 {
            let last = g.last_point(s);
            assert_eq!(last, &g.first_points[(s + 1) % 6], "({a},{b}) state {}", s + 1);
            for k in 0..g.out_degree(s) - 1 {
                let e1 = g.edge(s, k);
                // last point of subpiece k is the first point of subpiece k + 1
                let top = |t: usize| -> Walk {
                    // maximal walk from t, written as a lasso over the last edges
                    let mut seen = vec![usize::MAX; 6];
                    let mut letters = Vec::new();
                    let mut u = t;
                    while seen[u] == usize::MAX {
                        seen[u] = letters.len();
                        let k = g.out_degree(u) - 1;
                        letters.push(k);
                        u = g.edge(u, k).target;
                    }
                    let per = letters.split_off(seen[u]);
                    Walk::periodic(t, letters, per)
                };
                let hi = top(e1.target);
                let w1 = Walk::periodic(s, [vec![k], hi.preperiod.clone()].concat(), hi.period.clone());
                let lo = Walk::periodic(s, vec![k + 1], vec![0]);
                assert_eq!(pt(&g, &w1), pt(&g, &lo), "({a},{b}) state {} edges {k}/{}", s + 1, k + 1);
            }
        }
    }
}

#[test]
fn parameter_endpoints() {
    let g = go(4, 5);
    let d = perron_data(&g.graph).unwrap();
    let f = &d.field;
    let w0 = param_to_walk(&f.zero(), &d, &g).unwrap();
    assert_eq!(w0.to_string(), "1;(1)");
    let w1 = param_to_walk(&f.one(), &d, &g).unwrap();
    assert_eq!(w1.start, 5);
    // every letter is the last edge of its state
    let mut s = w1.start;
    for &k in w1.preperiod.iter().chain(&w1.period).chain(&w1.period) {
        assert_eq!(k, g.out_degree(s) - 1);
        s = g.edge(s, k).target;
    }
    let c0 = boundary_point(&f.zero(), &d, &g).unwrap();
    let c1 = boundary_point(&f.one(), &d, &g).unwrap();
    assert_eq!(c0, c1);
    let sb: Walk = "3;2,1,3,(2)".parse().unwrap();
    let t = walk_to_param(&sb, &d, &g).unwrap();
    let want: RationalPoint = point_eval(&"0.440(04)".parse::<Address>().unwrap(), g.params());
    assert_eq!(boundary_point(&t, &d, &g).unwrap(), want);
}

#[test]
fn parameter_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (a, b) in [(4, 5), (2, 2), (5, 5)] {
        let g = go(a, b);
        let d = perron_data(&g.graph).unwrap();
        for _ in 0..50 {
            let start = rng.gen_range(0..6);
            let mut s = start;
            let mut pre = Vec::new();
            for _ in 0..rng.gen_range(0..5) {
                let k = rng.gen_range(0..g.out_degree(s));
                pre.push(k);
                s = g.edge(s, k).target;
            }
            let mut per = Vec::new();
            let mut u = s;
            for _ in 0..rng.gen_range(1..4) {
                let k = rng.gen_range(0..g.out_degree(u));
                per.push(k);
                u = g.edge(u, k).target;
            }
            // close the period only if it returns to its start state
            let w = if u == s { Walk::periodic(start, pre, per) } else { Walk::periodic(start, [pre, per].concat(), vec![0]) };
            let t = walk_to_param(&w, &d, &g).unwrap();
            let back = param_to_walk(&t, &d, &g).unwrap();
            assert_eq!(walk_to_param(&back, &d, &g).unwrap(), t, "({a},{b}) {w}");
            assert_eq!(pt(&g, &back), pt(&g, &w), "({a},{b}) {w} vs {back}");
        }
    }
}

#[test]
fn approximations() {
    for (a, b) in [(2, 2), (4, 5), (5, 5), (7, 9)] {
        let g = go(a, b);
        let mut prev: Option<HashSet<RationalPoint>> = None;
        for n in 0..=4 {
            let ap = approx_boundary(&g, n, DEFAULT_WALK_BUDGET).unwrap();
            if n == 0 {
                assert_eq!(ap.vertices.len(), 6);
            }
            assert_eq!(ap.walk_count, walk_count(&g, n));
            assert!(ap.endpoints_match && polygon_is_simple(&ap.vertices), "({a},{b}) n={n}");
            let set: HashSet<RationalPoint> = ap.vertices.into_iter().collect();
            if let Some(pv) = prev {
                assert!(pv.is_subset(&set), "({a},{b}) n={n}");
            }
            prev = Some(set);
        }
    }
}

fn walk_count(g: &OrderedContactGraph, n: usize) -> u128 {
    // row sums of 𝐃ⁿ, by enumerating walks
    fn go(g: &OrderedContactGraph, s: usize, n: usize) -> u128 {
        if n == 0 {
            1
        } else {
            (0..g.out_degree(s)).map(|k| go(g, g.edge(s, k).target, n - 1)).sum()
        }
    }
    (0..6).map(|s| go(g, s, n)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// ψ of a walk with a prefix reads the prefix digits, then ψ of the rest.
    #[test]
    fn psi_concatenation(b in 2i64..=9, a0 in 1i64..=9, seed in any::<u64>()) {
        let a = a0.min(b);
        let g = go(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = rng.gen_range(0..6);
        let k = rng.gen_range(0..g.out_degree(start));
        let e = *g.edge(start, k);
        let j = rng.gen_range(0..g.out_degree(e.target));
        let tail = Walk::periodic(e.target, vec![j], vec![0]);
        let full = Walk::periodic(start, vec![k, j], vec![0]);
        let lhs = psi(&full, &g).unwrap();
        let rhs = psi(&tail, &g).unwrap().prepend(&[e.digit]);
        prop_assert_eq!(lhs, rhs);
    }
}

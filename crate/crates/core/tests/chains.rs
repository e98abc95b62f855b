use std::collections::BTreeSet;

use cnstile::automaton::{DigitAutomaton, IntersectionKind};
use cnstile::chains::*;
use cnstile::contact::{build_contact_graph, derive_order_extension, psi, OrderedContactGraph};
use cnstile::numsys::point_eval;
use cnstile::{Address, RationalPoint, TileParams};

fn go(a: i64, b: i64) -> OrderedContactGraph {
    let g = build_contact_graph(&TileParams::new(a, b).unwrap()).unwrap();
    derive_order_extension(&g).unwrap()
}

fn ad(s: &str) -> Address {
    s.parse().unwrap()
}

fn val(g: &OrderedContactGraph, s: &str) -> RationalPoint {
    point_eval(&ad(s), g.params())
}

/// `head (rep)^p mid [K…]` for `p ≥ pmin`, or a single address.
enum Term {
    Cyl { head: Vec<i64>, rep: Vec<i64>, pmin: usize, mid: Vec<i64>, ks: Vec<usize> },
    Point(Vec<i64>, Vec<i64>),
}

fn cyl(head: &[i64], rep: &[i64], pmin: usize, mid: &[i64], ks: &[usize]) -> Term {
    Term::Cyl { head: head.to_vec(), rep: rep.to_vec(), pmin, mid: mid.to_vec(), ks: ks.to_vec() }
}

fn cyls(head: &[i64], rep: &[i64], pmin: usize, ks_range: std::ops::RangeInclusive<i64>, ks: &[usize]) -> Vec<Term> {
    ks_range.map(|k| cyl(head, rep, pmin, &[k], ks)).collect()
}

/// The unions describing the curves, written out directly.
fn described(a: i64, b: i64, i: i64) -> Vec<Term> {
    let t = b - 1;
    let mut v = Vec::new();
    if i <= b - 2 {
        v.push(Term::Point(vec![i, 0, t], vec![t, 0]));
        v.push(cyl(&[i, 0, t], &[t, 0], 0, &[b - a], &[1]));
        v.extend(cyls(&[i, 0, t], &[t, 0], 0, b - a + 1..=b - 2, &[1, 2]));
        v.extend(cyls(&[i, 0, t, t], &[0, t], 0, 1..=a - 2, &[4, 5]));
        v.push(cyl(&[i, 0, t, t], &[0, t], 0, &[a - 1], &[4]));
        v.extend(cyls(&[i], &[], 0, 0..=a - 3, &[4, 5]));
        v.push(cyl(&[i, a - 2], &[], 0, &[], &[4]));
        v.push(cyl(&[i, a - 2, b - 2], &[], 0, &[], &[1]));
        v.push(cyl(&[i, a - 2, b - 1], &[], 0, &[], &[1, 2]));
        v.push(cyl(&[i, a - 2, b - 2], &[0, t], 0, &[0], &[4]));
        v.push(cyl(&[i, a - 2, b - 2, 0], &[t, 0], 0, &[t], &[1]));
        v.push(Term::Point(vec![i, a - 2, b - 2], vec![0, t]));
    } else if i == b - 1 {
        let p = [t, a - 2, b - 2];
        v.push(Term::Point(p.to_vec(), vec![0, t]));
        v.extend(cyls(&p, &[0, t], 0, 0..=a - 2, &[4, 5]));
        v.push(cyl(&p, &[0, t], 0, &[a - 1], &[4]));
        v.push(cyl(&[t, a - 2, b - 2, 0], &[t, 0], 0, &[b - a], &[1]));
        v.extend(cyls(&[t, a - 2, b - 2, 0], &[t, 0], 0, b - a + 1..=b - 1, &[1, 2]));
        v.push(cyl(&[t, a - 2, b - a + 1], &[], 0, &[], &[1]));
        v.extend(cyls(&[t, a - 2], &[], 0, b - a + 2..=b - 3, &[1, 2]));
        v.push(cyl(&[t, a - 2], &[b - a + 1, a - 2], 1, &[a - 2], &[1]));
        v.extend(cyls(&[t, a - 2], &[b - a + 1, a - 2], 1, a - 1..=b - 1, &[1, 2]));
        // p = 0 is included here: the walk interval contains e.g. (5;2,6,6,3,…)
        // for (4,5), which reads 0.4221…
        v.extend(cyls(&[t, a - 2, b - a + 1], &[a - 2, b - a + 1], 0, 0..=a - 3, &[4, 5]));
        v.push(cyl(&[t, a - 2, b - a + 1], &[a - 2, b - a + 1], 0, &[a - 2], &[4]));
        v.push(Term::Point(vec![t], vec![a - 2, b - a + 1]));
    } else {
        let p = [t, t, 0];
        v.push(Term::Point(p.to_vec(), vec![0, t]));
        v.extend(cyls(&p, &[0, t], 0, 1..=a - 2, &[4, 5]));
        v.push(cyl(&p, &[0, t], 0, &[a - 1], &[4]));
        v.push(cyl(&[t, t, 0, 0], &[t, 0], 0, &[b - a], &[1]));
        v.extend(cyls(&[t, t, 0, 0], &[t, 0], 0, b - a + 1..=b - 2, &[1, 2]));
        v.push(cyl(&[t], &[b - a + 1, a - 2], 0, &[b - a + 1], &[1]));
        v.extend(cyls(&[t], &[b - a + 1, a - 2], 0, b - a + 2..=b - 1, &[1, 2]));
        v.extend(cyls(&[t, b - a + 1], &[a - 2, b - a + 1], 0, 0..=a - 3, &[4, 5]));
        v.push(cyl(&[t, b - a + 1], &[a - 2, b - a + 1], 0, &[a - 2], &[4]));
        v.push(Term::Point(vec![t], vec![b - a + 1, a - 2]));
    }
    v
}

/// Depth-`n` prefixes of the described union; `K_j` prefixes come from the
/// boundary graph started in state `j`.
fn described_prefixes(g: &OrderedContactGraph, i: i64, n: usize) -> BTreeSet<Vec<u32>> {
    let (a, b) = (g.params().a, g.params().b);
    let bl = boundary_language(&g.graph);
    let k_pref = |j: usize, m: usize| DigitAutomaton::new(bl.names.clone(), vec![j - 1], bl.transitions.clone()).prefixes(m);
    let u = |v: &[i64]| v.iter().map(|&x| x as u32).collect::<Vec<u32>>();
    let mut out = BTreeSet::new();
    for term in described(a, b, i) {
        match term {
            Term::Point(pre, per) => {
                out.insert(Address::fractional(u(&pre), u(&per)).unwrap().prefix(n));
            }
            Term::Cyl { head, rep, pmin, mid, ks } => {
                let pmax = if rep.is_empty() { pmin } else { pmin + n };
                for p in pmin..=pmax {
                    let mut w = u(&head);
                    for _ in 0..p {
                        w.extend(u(&rep));
                    }
                    w.extend(u(&mid));
                    if w.len() >= n {
                        out.insert(w[..n].to_vec());
                        continue;
                    }
                    for &k in &ks {
                        for tail in k_pref(k, n - w.len()) {
                            let mut x = w.clone();
                            x.extend(tail);
                            out.insert(x);
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn table_endpoints() {
    let g = go(4, 5);
    let rows = alpha_table(g.params()).unwrap();
    let a5 = &rows[4];
    assert_eq!(psi(&a5.s, &g).unwrap(), ad("0.440(04)"));
    assert_eq!(psi(&a5.t, &g).unwrap(), ad("0.4(2)"));
    assert_eq!(psi(&rows[3].s, &g).unwrap(), ad("0.4(2)"));
    assert_eq!(rows[3].s.to_string(), "5;2,(6)");
    let g = go(5, 7);
    let rows = alpha_table(g.params()).unwrap();
    assert_eq!(psi(&rows[0].s, &g).unwrap(), ad("0.106(60)"));
}

#[test]
fn wrong_regime() {
    for (a, b) in [(5, 5), (3, 3), (2, 2)] {
        let p = TileParams::new(a, b).unwrap();
        assert!(alpha_table(&p).unwrap_err().is_regime());
    }
}

#[test]
fn languages_match_the_described_unions() {
    for (a, b) in [(4, 5), (5, 7), (6, 9)] {
        let g = go(a, b);
        let curves = alpha_curves(&g).unwrap();
        for c in &curves {
            for n in [4, 6] {
                assert_eq!(c.language.prefixes(n), described_prefixes(&g, c.index as i64, n), "({a},{b}) {} depth {n}", c.name());
            }
        }
    }
}

#[test]
fn alpha_one_contains_its_endpoint() {
    let g = go(4, 5);
    let curves = alpha_curves(&g).unwrap();
    assert!(curves[0].language.accepts(&ad("0.104(40)")));
    let boundary = boundary_language(&g.graph);
    for c in &curves {
        assert!(c.language.included_in(&boundary).is_ok());
    }
}

#[test]
fn four_five_chain() {
    let g = go(4, 5);
    let r = verify_chain(&g).unwrap();
    let IntersectionKind::UniquePoint { point, .. } = r.get(0, 1) else { panic!() };
    assert_eq!(*point, val(&g, "0.223(04)"));
    assert_eq!(*point, val(&g, "0.104(40)"));
    assert_eq!(*r.get(4, 2), IntersectionKind::Empty);
    let IntersectionKind::UniquePoint { point, .. } = r.get(3, 4) else { panic!() };
    assert_eq!(*point, val(&g, "0.4(2)"));
}

#[test]
fn four_five_circular_chain() {
    let g = go(4, 5);
    let r = verify_circular_chain(&g).unwrap();
    let IntersectionKind::UniquePoint { point, .. } = r.get(4, 5) else { panic!() };
    assert_eq!(*point, val(&g, "0.440(04)"));
    assert_eq!(*r.get(0, 6), IntersectionKind::Empty);
    assert!(verify_prime_chain(&g).is_ok());
}

#[test]
fn chains_in_regime() {
    for (a, b) in [(5, 7), (6, 9), (7, 11)] {
        let g = go(a, b);
        verify_chain(&g).unwrap();
        let r = verify_circular_chain(&g).unwrap();
        let n = 2 * b as usize;
        let singles = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| matches!(r.get(i, j), IntersectionKind::UniquePoint { .. }))
            .count();
        assert_eq!(singles, n);
    }
}

#[test]
fn junction_forms_agree() {
    for (a, b) in [(4, 5), (5, 7), (6, 9)] {
        let p = TileParams::new(a, b).unwrap();
        for (_, _, forms) in expected_junctions(&p) {
            let v: RationalPoint = point_eval(&forms[0], &p);
            assert!(forms.iter().all(|f| point_eval::<num_rational::BigRational>(f, &p) == v));
        }
    }
}

#[test]
fn gamma_four_five() {
    let g = go(4, 5);
    let arcs = gamma_arcs(&g).unwrap();
    assert_eq!(arcs.len(), 3);
    assert!(arcs[0].language.accepts(&ad("0.1(2)")));
    assert_eq!(point_eval::<num_rational::BigRational>(&arcs[1].endpoints.0, g.params()), val(&g, "0.223(04)"));
    assert_eq!(point_eval::<num_rational::BigRational>(&arcs[1].endpoints.1, g.params()), val(&g, "0.240(04)"));
    assert!(gamma_arcs(&go(6, 9)).is_ok());
}

#[test]
fn symmetry_centre() {
    let g = go(4, 5);
    let s = symmetry_and_junctions(&g).unwrap();
    assert_eq!(s.centre, val(&g, "0.(2)"));
    assert_eq!(s.points[4], val(&g, "0.4(2)"));
    let g = go(5, 7);
    let s = symmetry_and_junctions(&g).unwrap();
    let half = num_rational::BigRational::new(1.into(), 2.into());
    assert_eq!(s.centre, val(&g, "0.(6)").scale(&half));
}

#[test]
fn subdivision_lemma() {
    for (a, b) in [(4, 5), (5, 7), (6, 9)] {
        let r = replay_subdivision_lemma(&TileParams::new(a, b).unwrap()).unwrap();
        assert!(r.checked.iter().all(|&c| c > 0));
        assert!(r.singletons > 0);
    }
}

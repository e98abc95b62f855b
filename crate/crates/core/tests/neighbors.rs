use std::collections::BTreeSet;

use cnstile::neighbors::*;
use cnstile::numsys::point_eval;
use cnstile::{DigitWord, RationalPoint, TileParams};
use proptest::prelude::*;

fn p(a: i64, b: i64) -> TileParams {
    TileParams::new(a, b).unwrap()
}

fn w(d: &[u32]) -> DigitWord {
    DigitWord::from(d)
}

fn set(v: &[[i64; 2]]) -> BTreeSet<[i64; 2]> {
    v.iter().flat_map(|&[x, y]| [[x, y], [-x, -y]]).collect()
}

fn members(s: &NeighborSet) -> BTreeSet<[i64; 2]> {
    s.members.iter().map(|v| v.0).collect()
}

#[test]
fn four_five_neighbors() {
    let s = neighbor_set_formula(&p(4, 5)).unwrap();
    assert_eq!(s.j, 2);
    assert_eq!(members(&s), set(&[[1, 0], [3, 1], [2, 1], [4, 1], [6, 2]]));
}

#[test]
fn small_formula_cases() {
    // P₁ = (1, 0), Q₁ = (A − 1, 1), R = (−A, −1) at n = 1
    assert_eq!(members(&neighbor_set_formula(&p(2, 2)).unwrap()), set(&[[1, 0], [1, 1], [2, 1]]));
    let s = neighbor_set_formula(&p(5, 5)).unwrap();
    assert_eq!((s.j, s.len()), (4, 18));
}

#[test]
fn formula_equals_search_on_grid() {
    for b in 2..=12 {
        for a in 1..=b {
            let f = neighbor_set_formula(&p(a, b)).unwrap();
            let s = neighbor_set_search(&p(a, b));
            assert_eq!(f.members, s.members, "({a},{b})");
            assert_eq!(f.len() as i64, 2 + 4 * neighbor_count_parameter(a, b));
            assert!(f.is_symmetric() && !f.contains([0, 0]));
        }
    }
}

#[test]
fn non_neighbors_never_return() {
    // successors of states outside 𝒮 ∪ {0} stay outside
    for (a, b) in [(2, 2), (4, 5), (5, 5), (6, 9), (12, 12)] {
        let params = p(a, b);
        let nb = neighbor_set_formula(&params).unwrap();
        let (lo, hi) = difference_box(&params);
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                if nb.contains_or_zero([x, y]) {
                    continue;
                }
                let ms = params.mul_int([x, y]);
                for d in -(b - 1)..=(b - 1) {
                    assert!(!nb.contains_or_zero([ms[0] + d, ms[1]]), "({a},{b}) {x},{y} +{d}");
                }
            }
        }
    }
}

#[test]
fn subdivision_examples() {
    let params = p(4, 5);
    let nb = neighbor_set_formula(&params).unwrap();
    assert_eq!(subdivision_diff(&w(&[2, 2]), &w(&[1, 0]), &params).unwrap(), [2, 1]);
    assert_eq!(subdivision_diff(&w(&[2]), &w(&[1]), &params).unwrap(), [1, 0]);
    assert_eq!(subdivision_diff(&w(&[3, 1]), &w(&[3, 1]), &params).unwrap(), [0, 0]);
    assert!(subdivision_intersects(&w(&[2]), &w(&[1]), &params, &nb).unwrap());
    assert!(!subdivision_intersects(&w(&[3]), &w(&[1]), &params, &nb).unwrap());
    assert!(subdivision_intersects(&w(&[2, 2]), &w(&[1, 0]), &params, &nb).unwrap());
    assert!(subdivision_diff(&w(&[1]), &w(&[1, 2]), &params).is_err());
}

#[test]
fn singleton_addresses() {
    let params = p(4, 5);
    for (u, v) in [([1, 2, 0], [0, 0, 1]), ([2, 2, 0], [1, 0, 1])] {
        let (l, r) = adjacent_singleton_point(&w(&u), &w(&v), &params).unwrap().unwrap();
        let (x, y): (RationalPoint, RationalPoint) = (point_eval(&l, &params), point_eval(&r, &params));
        assert_eq!(x, y);
    }
    let (l, r) = adjacent_singleton_point(&w(&[1, 2, 0]), &w(&[0, 0, 1]), &params).unwrap().unwrap();
    assert_eq!((l.to_string(), r.to_string()), ("0.120(04)".into(), "0.001(40)".into()));
    assert_eq!(adjacent_singleton_point(&w(&[1, 2, 0]), &w(&[1, 2, 0]), &params).unwrap(), None);
    assert!(adjacent_singleton_point(&w(&[1, 2, 0]), &w(&[0, 0, 1]), &p(5, 5)).unwrap_err().is_regime());
}

/// The first induction step for `D₁ ∩ D₂`: among the depth-2 pieces allotted
/// to each side, only three pairs meet.
#[test]
fn cut_point_first_step_case_analysis() {
    for b in 5..=12u32 {
        for a in 1..=b {
            let params = p(a as i64, b as i64);
            if params.excess() < 5 {
                continue;
            }
            let nb = neighbor_set_formula(&params).unwrap();
            let c = a - 3;
            let side1: Vec<[u32; 2]> = (0..b).map(|d| [c - 1, d]).chain((b - a + 2..b).map(|d| [c, d])).collect();
            let side2: Vec<[u32; 2]> = (0..b).map(|d| [c + 1, d]).chain((0..=b - a + 2).map(|d| [c, d])).collect();
            let mut meet = BTreeSet::new();
            for u in &side1 {
                for v in &side2 {
                    if subdivision_intersects(&w(u), &w(v), &params, &nb).unwrap() {
                        meet.insert((*u, *v));
                    }
                }
            }
            let (z, up, down) = (b - a + 2, b - a + 3, b - a + 1);
            let want: BTreeSet<_> = [([c, z], [c, z]), ([c, up], [c, z]), ([c, z], [c, down])].into_iter().collect();
            assert_eq!(meet, want, "({a},{b})");
        }
    }
}

proptest! {
    #[test]
    fn diff_is_antisymmetric_and_additive(
        b in 2i64..=12,
        a0 in 0i64..=12,
        u in prop::collection::vec(0u32..12, 1..6),
        v in prop::collection::vec(0u32..12, 1..6),
    ) {
        let params = p(a0.min(b), b);
        let n = u.len().min(v.len());
        let m = b as u32;
        let u: Vec<u32> = u[..n].iter().map(|d| d % m).collect();
        let v: Vec<u32> = v[..n].iter().map(|d| d % m).collect();
        let d = subdivision_diff(&w(&u), &w(&v), &params).unwrap();
        let e = subdivision_diff(&w(&v), &w(&u), &params).unwrap();
        prop_assert_eq!(d, [-e[0], -e[1]]);
        // extending both words by the same digit multiplies by M
        let (mut u2, mut v2) = (u.clone(), v.clone());
        u2.push(0);
        v2.push(0);
        prop_assert_eq!(subdivision_diff(&w(&u2), &w(&v2), &params).unwrap(), params.mul_int(d));
    }
}

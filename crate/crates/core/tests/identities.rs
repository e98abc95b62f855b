use cnstile::numsys::{apply_contraction, flip, point_eval, Digit};
use cnstile::{Address, RationalPoint, TileParams};
use num_rational::BigRational;
use proptest::prelude::*;

const CHAIN_REGIME: [(i64, i64); 4] = [(4, 5), (5, 7), (6, 9), (7, 11)];

fn p(a: i64, b: i64) -> TileParams {
    TileParams::new(a, b).unwrap()
}

fn eval(addr: &Address, params: &TileParams) -> RationalPoint {
    point_eval(addr, params)
}

/// Triples `u, v` with `u − v = (1, A−2, −1)` digitwise.
fn eq_triples(params: TileParams) -> impl Strategy<Value = ([u32; 3], [u32; 3])> {
    let (a, top) = (params.a as u32, params.max_digit());
    (1..=top, (a - 2)..=top, 0..top).prop_map(move |(x, y, z)| ([x, y, z], [x - 1, y - (a - 2), z + 1]))
}

fn chain_pair() -> impl Strategy<Value = TileParams> {
    prop::sample::select(CHAIN_REGIME.to_vec()).prop_map(|(a, b)| p(a, b))
}

fn any_pair() -> impl Strategy<Value = TileParams> {
    (2i64..=12).prop_flat_map(|b| (0..=b).prop_map(move |a| p(a, b)))
}

fn address(params: TileParams) -> impl Strategy<Value = Address> {
    let m = params.b as u32;
    (prop::collection::vec(0..m, 0..6), prop::collection::vec(0..m, 1..5))
        .prop_map(|(pre, per)| Address::fractional(pre, per).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn dual_addresses_coincide((params, (u, v)) in chain_pair().prop_flat_map(|q| (Just(q), eq_triples(q)))) {
        let top = params.max_digit();
        let l = Address::fractional(u.to_vec(), vec![0, top]).unwrap();
        let r = Address::fractional(v.to_vec(), vec![top, 0]).unwrap();
        prop_assert_eq!(eval(&l, &params), eval(&r, &params));
    }

    #[test]
    fn flip_reflection((params, w) in any_pair().prop_flat_map(|q| (Just(q), address(q)))) {
        let top = eval(&Address::purely_periodic(vec![params.max_digit()]).unwrap(), &params);
        prop_assert_eq!(eval(&flip(&w, &params), &params), &top - &eval(&w, &params));
    }

    #[test]
    fn prefix_shift((params, w, d) in any_pair().prop_flat_map(|q| (Just(q), address(q), 0..q.b as u32))) {
        prop_assert_eq!(apply_contraction(Digit(d), &eval(&w, &params), &params), eval(&w.prepend(&[d]), &params));
    }
}

#[test]
fn symmetry_centre() {
    for b in (5..=23).step_by(2) {
        let params = p((b + 3) / 2, b);
        let half = BigRational::new(1.into(), 2.into());
        let top = eval(&Address::purely_periodic(vec![params.max_digit()]).unwrap(), &params);
        let mid = eval(&Address::purely_periodic(vec![(params.a - 2) as u32]).unwrap(), &params);
        assert_eq!(top.scale(&half), mid, "({}, {b})", params.a);
    }
}

#[test]
fn dual_addresses_need_the_pattern() {
    // a neighbouring pattern gives different points
    let params = p(4, 5);
    let l = Address::fractional(vec![1, 2, 0], vec![0, 4]).unwrap();
    let r = Address::fractional(vec![0, 1, 1], vec![4, 0]).unwrap();
    assert_ne!(eval(&l, &params), eval(&r, &params));
}

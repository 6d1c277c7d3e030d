use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

use pcfdyn_core::dynamics::{ProjPointQ, RationalMapP1};
use pcfdyn_core::padic::{
    integrality_obstruction, lemma12_search, newton_polygon, root_valuation_multiset, vp, Valuation,
};
use pcfdyn_core::{BigRat, Budgets, UniPoly};

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-200i64..=200, 1..=max_deg + 1)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| UniPoly::from_i64s(&c))
}

fn sorted_valuations(f: &UniPoly, p: &BigUint) -> (usize, Vec<BigRat>) {
    let np = newton_polygon(f, p).unwrap();
    let mut v = root_valuation_multiset(&np);
    v.sort();
    (np.zero_roots(), v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_merges_polygons(f in poly(5), g in poly(5), p in prop::sample::select(vec![2u32, 3, 5])) {
        let p = BigUint::from(p);
        let (zf, mut vf) = sorted_valuations(&f, &p);
        let (zg, vg) = sorted_valuations(&g, &p);
        vf.extend(vg);
        vf.sort();
        prop_assert_eq!(sorted_valuations(&(&f * &g), &p), (zf + zg, vf));
    }

    #[test]
    fn slopes_increase(f in poly(8), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let np = newton_polygon(&f, &BigUint::from(p)).unwrap();
        for w in np.segments.windows(2) {
            prop_assert!(w[0].slope < w[1].slope);
        }
        let total: usize = np.segments.iter().map(|s| s.length).sum();
        prop_assert_eq!(total + np.zero_roots(), f.deg());
    }

    #[test]
    fn eisenstein_is_one_segment(
        n in 1usize..8,
        mids in prop::collection::vec(-20i64..=20, 7),
        unit in 1i64..=20,
        p in prop::sample::select(vec![2i64, 3, 5]),
    ) {
        prop_assume!(unit % p != 0);
        let mut c: Vec<i64> = vec![p * unit];
        c.extend(mids.iter().take(n - 1).map(|m| m * p));
        c.push(1);
        let np = newton_polygon(&UniPoly::from_i64s(&c), &BigUint::from(p as u64)).unwrap();
        prop_assert_eq!(np.segments.len(), 1);
        prop_assert_eq!(np.segments[0].length, n);
        prop_assert_eq!(np.segments[0].slope.clone(), BigRat::new((-1).into(), (n as i64).into()));
        if n >= 2 {
            prop_assert!(integrality_obstruction(&np, n as u32).unwrap());
        }
    }

    #[test]
    fn valuation_is_additive(a in 1i64..100_000, b in 1i64..100_000, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let p = BigUint::from(p);
        let r = |x: i64| BigRat::from_integer(BigInt::from(x));
        let sum = vp(&r(a), &p).unwrap().finite().unwrap() + vp(&r(b), &p).unwrap().finite().unwrap();
        prop_assert_eq!(vp(&(r(a) * r(b)), &p).unwrap(), Valuation::Finite(sum));
        prop_assert_eq!(vp(&(r(a) / r(b)), &p).unwrap().finite().unwrap(),
            vp(&r(a), &p).unwrap().finite().unwrap() - vp(&r(b), &p).unwrap().finite().unwrap());
    }
}

#[test]
fn valuation_edge_cases() {
    assert_eq!(vp(&BigRat::zero(), &BigUint::from(3u32)).unwrap(), Valuation::Infinite);
    assert!(vp(&BigRat::from_integer(12.into()), &BigUint::from(6u32)).is_err());
    assert_eq!(vp(&BigRat::new(9.into(), 8.into()), &BigUint::from(2u32)).unwrap(), Valuation::Finite(-3));
}

#[test]
fn lemma12_witnesses_recheck() {
    let map = RationalMapP1::parse("z^2+1").unwrap();
    let a = ProjPointQ::from_int(0);
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    for (excluded, want) in [(vec![two.clone()], (5u32, 3usize)), (vec![two, five], (13, 4))] {
        let s = lemma12_search(&map, &a, 2, &excluded, 6, &Budgets::default()).unwrap();
        let first = &s.witnesses[0];
        assert_eq!((first.p.clone(), first.n, first.v), (BigUint::from(want.0), want.1, 1));
        assert!(s.witnesses.iter().all(|w| w.verify(&map, &a, 2, &excluded)));
    }
}

use num_bigint::BigInt;
use proptest::prelude::*;

use pcfdyn_core::dynamics::{
    critical_wronskian, forward_image, is_exceptional, iterate_forms, iterate_map, pcf_check, Divisor, PcfStatus,
    ProjPointQ, RationalMapP1,
};
use pcfdyn_core::Budgets;

fn map_strategy() -> impl Strategy<Value = RationalMapP1> {
    (2usize..=3)
        .prop_flat_map(|d| (prop::collection::vec(-5i64..=5, d + 1), prop::collection::vec(-5i64..=5, d + 1)))
        .prop_filter_map("degenerate", |(f, g)| RationalMapP1::from_forms(&f, &g).ok())
}

fn point_strategy() -> impl Strategy<Value = ProjPointQ> {
    (-30i64..=30, 0i64..=30)
        .prop_filter("origin", |&(a, b)| a != 0 || b != 0)
        .prop_map(|(a, b)| ProjPointQ::new(BigInt::from(a), BigInt::from(b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iterate_matches_repeated_evaluation(m in map_strategy(), p in point_strategy(), k in 1usize..=3) {
        let it = iterate_map(&m, k, &Budgets::default()).unwrap();
        prop_assert_eq!(it.degree(), m.degree().pow(k as u32));
        let mut q = p.clone();
        for _ in 0..k {
            q = m.evaluate(&q);
        }
        prop_assert_eq!(it.evaluate(&p), q);
    }

    #[test]
    fn iterates_compose(m in map_strategy(), p in point_strategy()) {
        let b = Budgets::default();
        let two = iterate_map(&m, 2, &b).unwrap();
        let (f, g) = iterate_forms(&m, 3, &b).unwrap();
        let direct = ProjPointQ::new(f.eval(p.a(), p.b()), g.eval(p.a(), p.b())).unwrap();
        prop_assert_eq!(direct, m.evaluate(&two.evaluate(&p)));
    }

    #[test]
    fn critical_multiplicity_is_2d_minus_2(m in map_strategy()) {
        let w = critical_wronskian(&m).unwrap();
        prop_assert_eq!(w.form.degree, 2 * m.degree() - 2);
        prop_assert!(!w.form.poly.is_zero());
        prop_assert_eq!(w.infinity_critical, w.form.poly.deg() < w.form.degree);
    }

    #[test]
    fn forward_image_of_a_point(m in map_strategy(), p in point_strategy()) {
        prop_assert_eq!(forward_image(&m, &Divisor::point(&p)), Divisor::point(&m.evaluate(&p)));
    }
}

#[test]
fn pcf_dichotomy() {
    for (m, status) in [
        ("z^2", PcfStatus::Pcf),
        ("z^2-1", PcfStatus::Pcf),
        ("z^2-2", PcfStatus::Pcf),
        ("z^2+1", PcfStatus::NonPcf),
        ("z^2+2", PcfStatus::NonPcf),
        ("z^2+3", PcfStatus::NonPcf),
    ] {
        let v = pcf_check(&RationalMapP1::parse(m).unwrap(), 10, 1 << 14).unwrap();
        assert_eq!(v.status, status, "{m}");
        assert_eq!(v.witness.is_some(), status == PcfStatus::NonPcf, "{m}");
    }
}

#[test]
fn exceptional_points_of_the_square_map() {
    let m = RationalMapP1::parse("z^2").unwrap();
    let b = Budgets::default();
    assert!(is_exceptional(&m, &ProjPointQ::from_int(0), &b).unwrap().exceptional);
    assert!(is_exceptional(&m, &ProjPointQ::infinity(), &b).unwrap().exceptional);
    assert!(!is_exceptional(&m, &ProjPointQ::from_int(1), &b).unwrap().exceptional);
    let p = RationalMapP1::parse("z^2+1").unwrap();
    assert!(is_exceptional(&p, &ProjPointQ::infinity(), &b).unwrap().exceptional);
    assert!(!is_exceptional(&p, &ProjPointQ::from_int(0), &b).unwrap().exceptional);
}

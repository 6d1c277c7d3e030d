use num_bigint::BigInt;
use proptest::prelude::*;

use pcfdyn_core::multivar::{
    jacobian_det, restrict_to_line, tchebyshev_map, tchebyshev_pi, verify_dupont, verify_tchebyshev, MapPN,
    MultiPoly,
};

/// Sparse polynomials in three variables with exponents below 4.
fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-9i64..=9, 0u32..4, 0u32..4, 0u32..4), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(MultiPoly::zero(3), |acc, (c, i, j, k)| &acc + &MultiPoly::term(BigInt::from(c), vec![i, j, k]))
    })
}

/// Forms of degree `d` in three variables, as a map of `P^2`.
fn form(d: u32) -> impl Strategy<Value = MultiPoly> {
    let monomials: Vec<Vec<u32>> =
        (0..=d).flat_map(|i| (0..=d - i).map(move |j| vec![i, j, d - i - j])).collect();
    prop::collection::vec(-4i64..=4, monomials.len()).prop_map(move |cs| {
        cs.iter()
            .zip(&monomials)
            .fold(MultiPoly::zero(3), |acc, (&c, m)| &acc + &MultiPoly::term(BigInt::from(c), m.clone()))
    })
}

fn map(d: u32) -> impl Strategy<Value = MapPN> {
    (form(d), form(d), form(d)).prop_filter_map("degenerate", |(a, b, c)| MapPN::new(vec![a, b, c]).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(3), a.clone());
    }

    #[test]
    fn exact_division_recovers_factor(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(MultiPoly::exact_divide(&(&a * &b), &b).unwrap(), Some(a));
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(), b in poly(), i in 0usize..3) {
        prop_assert_eq!((&a * &b).derivative(i), &(&a.derivative(i) * &b) + &(&a * &b.derivative(i)));
    }

    #[test]
    fn jacobian_chain_rule(f in map(2), g in map(2)) {
        let composed = f.apply(g.coords()).unwrap();
        prop_assume!(composed.iter().any(|c| !c.is_zero()));
        let fg = MapPN::new(composed).unwrap();
        let lhs = jacobian_det(&fg).unwrap();
        let rhs = &jacobian_det(&f).unwrap().substitute(g.coords()).unwrap() * &jacobian_det(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn dupont_restriction_to_the_diagonal() {
    let dupont = MapPN::parse("[(x-y+z)^2 : (x+y-z)^2 : (-x+y+z)^2]").unwrap();
    let (num, den) = restrict_to_line(&dupont.iterate(3).unwrap(), &[1, 1, 0], &[0, 0, 1]).unwrap();
    // Expansions of (4x^2-4x-1)^4 and (16x^4-32x^3+40x^2-24x+1)^2.
    assert_eq!(num.to_string(), "256*x^8-1024*x^7+1280*x^6-256*x^5-416*x^4+64*x^3+80*x^2+16*x+1");
    assert_eq!(den.to_string(), "256*x^8-1024*x^7+2304*x^6-3328*x^5+3168*x^4-1984*x^3+656*x^2-48*x+1");
}

#[test]
fn worked_examples_verify() {
    assert!(verify_dupont().all_passed());
    assert!(verify_tchebyshev().all_passed());
    assert_eq!(tchebyshev_pi().len(), 3);
    assert_eq!(tchebyshev_map().degree(), 2);
}

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use pcfdyn_core::exactmath::{
    discriminant, discriminant_sylvester, factor_integer, factor_poly, is_prime, resultant, resultant_subresultant,
    resultant_sylvester,
};
use pcfdyn_core::{Budgets, UniPoly};

/// Integer polynomials of exact degree in `1..=max_deg`.
fn poly(max_deg: usize, c: i64) -> impl Strategy<Value = UniPoly> {
    (1..=max_deg)
        .prop_flat_map(move |d| (prop::collection::vec(-c..=c, d), (1..=c).prop_union(-c..=-1)))
        .prop_map(|(mut low, lead)| {
            low.push(lead);
            UniPoly::from_i64s(&low)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subresultant_agrees_with_sylvester(p in poly(7, 30), q in poly(7, 30)) {
        prop_assert_eq!(resultant_subresultant(&p, &q).unwrap(), resultant_sylvester(&p, &q).unwrap());
    }

    #[test]
    fn resultant_is_antisymmetric(p in poly(6, 20), q in poly(6, 20)) {
        let sign = if (p.deg() * q.deg()) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(resultant(&p, &q).unwrap(), sign * resultant(&q, &p).unwrap());
    }

    #[test]
    fn resultant_is_multiplicative(p in poly(4, 10), q in poly(4, 10), r in poly(4, 10)) {
        let pq = &p * &q;
        prop_assert_eq!(resultant(&pq, &r).unwrap(), resultant(&p, &r).unwrap() * resultant(&q, &r).unwrap());
    }

    #[test]
    fn discriminant_matches_sylvester_definition(p in poly(7, 25)) {
        prop_assume!(p.deg() >= 1);
        prop_assert_eq!(discriminant(&p).unwrap(), discriminant_sylvester(&p).unwrap());
    }

    #[test]
    fn factor_product_law(p in poly(5, 12), q in poly(4, 12)) {
        let f = &p * &q;
        let fac = factor_poly(&f, &Budgets::default()).unwrap();
        prop_assert!(fac.complete);
        prop_assert_eq!(fac.product(), f);
        for factor in &fac.factors {
            prop_assert!(factor.poly.is_primitive());
            prop_assert!(factor.poly.lc().is_positive());
            prop_assert!(factor.irreducible);
        }
    }

    #[test]
    fn integer_factorization_recomposes(n in 1i64..=i64::MAX) {
        let fac = factor_integer(&BigInt::from(n), &Budgets::default()).unwrap();
        prop_assert!(fac.complete);
        prop_assert_eq!(fac.value(), BigUint::from(n as u64));
        prop_assert!(fac.primes().all(is_prime));
    }
}

#[test]
fn classical_discriminants() {
    let d = |c: &[i64]| discriminant(&UniPoly::from_i64s(c)).unwrap();
    // b^2 - 4ac and -4p^3 - 27q^2
    assert_eq!(d(&[3, 5, 2]), BigInt::from(25 - 24));
    assert_eq!(d(&[-2, 0, 0, 1]), BigInt::from(-108));
    assert_eq!(d(&[1, -1, 0, 1]), BigInt::from(4 - 27));
    assert!(d(&[1, 2, 1]).is_zero());
}

#[test]
fn cyclotomic_factorization() {
    let x12 = UniPoly::from_i64s(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    let fac = factor_poly(&x12, &Budgets::default()).unwrap();
    let mut degrees: Vec<usize> = fac.factors.iter().map(|f| f.degree()).collect();
    degrees.sort();
    assert_eq!(degrees, [1, 1, 2, 2, 2, 4]);
    assert_eq!(fac.product(), x12);
}

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use pcfdyn_core::dynamics::{ProjPointQ, RationalMapP1};
use pcfdyn_core::exactmath::{discriminant_sylvester, factor_integer};
use pcfdyn_core::exec::Sequential;
use pcfdyn_core::ramify::{
    preimage_poly, ramified_primes_at_level, stabilization_experiment, wildness_indicator, RamStatus,
};
use pcfdyn_core::{Budgets, UniPoly};

fn squarefree(d: i64) -> bool {
    (2..=7).all(|k: i64| d % (k * k) != 0)
}

/// `p` ramifies in `Q(sqrt d)` iff `p | d` for odd `p`, and `2` ramifies iff
/// `d` is not `1 mod 4`.
fn classically_ramified(d: i64, p: u32) -> bool {
    if p == 2 {
        d.rem_euclid(4) != 1
    } else {
        d % i64::from(p) == 0
    }
}

#[test]
fn quadratic_fields_follow_the_classical_rule() {
    let square = RationalMapP1::parse("z^2").unwrap();
    let mut checked = 0;
    for d in (-50i64..=50).filter(|&d| d != 0 && squarefree(d)) {
        let level = ramified_primes_at_level(&square, &ProjPointQ::from_int(d), 1, &Budgets::default(), &Sequential)
            .unwrap();
        let support: Vec<u32> = (2..=50u32).filter(|&p| (4 * d) % i64::from(p) == 0 && is_small_prime(p)).collect();
        let got: Vec<u32> = level.verdicts.iter().map(|v| u32::try_from(&v.p).unwrap()).collect();
        assert_eq!(got, support, "candidates for d = {d}");
        for v in &level.verdicts {
            let p = u32::try_from(&v.p).unwrap();
            let want = if classically_ramified(d, p) { RamStatus::Ramified } else { RamStatus::Unramified };
            assert_eq!(v.status, want, "d = {d}, p = {p}: {}", v.evidence);
        }
        checked += 1;
    }
    assert_eq!(checked, 62);
}

fn is_small_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// `f^n(x) - alpha` by repeated composition, with no use of binary forms.
fn naive_preimage(f: &UniPoly, alpha: i64, n: usize) -> UniPoly {
    let mut g = UniPoly::x();
    for _ in 0..n {
        g = f.compose(&g);
    }
    let p = &g - &UniPoly::constant(BigInt::from(alpha));
    let p = p.primitive_part();
    if p.lc().is_negative() { -p } else { p }
}

fn prime_support(n: &BigInt) -> Vec<BigUint> {
    factor_integer(n, &Budgets::default()).unwrap().primes().cloned().collect()
}

#[test]
fn pcf_ramification_stays_in_the_predicted_set() {
    for (m, f, alpha) in [
        ("z^2", UniPoly::from_i64s(&[0, 0, 1]), 2),
        ("z^2-1", UniPoly::from_i64s(&[-1, 0, 1]), 3),
        ("z^2-2", UniPoly::from_i64s(&[-2, 0, 1]), 3),
    ] {
        let map = RationalMapP1::parse(m).unwrap();
        let a = ProjPointQ::from_int(alpha);
        let r = stabilization_experiment(&map, &a, 4, &Budgets::default(), &Sequential).unwrap();
        assert!(r.exhausted.is_none() && r.unknown.is_empty(), "{m}");
        assert_eq!(r.contained_in_prediction, Some(true), "{m}");
        assert!(r.stabilized_at.is_some_and(|n| n <= 4), "{m}");
        for level in &r.levels {
            let pre = preimage_poly(&map, &a, level.n, &Budgets::default()).unwrap();
            assert_eq!(pre.poly, naive_preimage(&f, alpha, level.n), "{m} level {}", level.n);
            let disc = discriminant_sylvester(&pre.poly).unwrap();
            assert!(!disc.is_zero());
            let candidates: Vec<BigUint> = level.verdicts.iter().map(|v| v.p.clone()).collect();
            assert_eq!(candidates, prime_support(&disc), "{m} level {}", level.n);
            for p in level.primes_with(RamStatus::Ramified) {
                assert!(r.predicted.contains(p), "{m}: {p} ramifies outside the prediction");
            }
        }
    }
}

#[test]
fn growing_ramification_for_a_non_pcf_map() {
    let map = RationalMapP1::parse("z^2+1").unwrap();
    let r = stabilization_experiment(&map, &ProjPointQ::from_int(0), 5, &Budgets::default(), &Sequential).unwrap();
    let sets: Vec<Vec<String>> =
        r.cumulative_by_level.iter().map(|s| s.iter().map(ToString::to_string).collect()).collect();
    assert_eq!(sets, [vec!["2"], vec!["2"], vec!["2", "5"], vec!["2", "5", "13"], vec!["2", "5", "13", "677"]]);
    assert_eq!(r.stabilized_at, None);
    assert!(wildness_indicator(&r).iter().any(|(p, w)| *p == BigUint::from(2u32) && *w));
}

//! Ramified primes of iterated preimage fields.

mod experiment;
mod verdict;

pub use experiment::{
    predicted_bad_set, stabilization_experiment, wildness_indicator, PredictedBadSet, RamificationReport,
    PREDICTION_LEVELS,
};
pub use verdict::{prime_verdict, RamStatus, RamVerdict};

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{Signed, Zero};

use crate::budget::Budgets;
use crate::dynamics::{iterate_forms, ProjPointQ, RationalMapP1};
use crate::error::{Error, Result};
use crate::exactmath::{discriminant, factor_integer, factor_poly, UniPoly};
use crate::exec::PrimeExecutor;

/// `P_n(x) = b F_n(x,1) - a G_n(x,1)` for `alpha = (a : b)`, primitive with
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimagePoly {
    pub level: usize,
    pub poly: UniPoly,
    /// Number of preimages at infinity: `d^n - deg P`.
    pub degree_drop: usize,
}

impl PreimagePoly {
    pub fn formal_degree(&self) -> usize {
        self.poly.deg() + self.degree_drop
    }
}

pub fn preimage_poly(map: &RationalMapP1, alpha: &ProjPointQ, n: usize, budget: &Budgets) -> Result<PreimagePoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let (f, g) = iterate_forms(map, n, budget)?;
    let p = &f.poly.scale(alpha.b()) - &g.poly.scale(alpha.a());
    let degree_drop = f.degree - p.deg();
    let mut poly = p.primitive_part();
    if poly.lc().is_negative() {
        poly = -poly;
    }
    Ok(PreimagePoly { level: n, poly, degree_drop })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub n: usize,
    pub poly_degree: usize,
    pub degree_drop: usize,
    pub disc_bits: u64,
    /// Degrees of the factors of `P_n` over `Q`.
    pub factor_degrees: Vec<usize>,
    /// `false` if the factorization over `Q` ran out of budget; verdicts
    /// then use the partial splitting, which remains sound.
    pub factorization_complete: bool,
    /// Ascending candidate primes with their verdicts.
    pub verdicts: Vec<RamVerdict>,
    /// Bits of the unfactored part of the discriminant, 0 if none.
    pub unknown_cofactor_bits: u64,
}

impl LevelReport {
    pub fn primes_with(&self, status: RamStatus) -> impl Iterator<Item = &BigUint> {
        self.verdicts.iter().filter(move |v| v.status == status).map(|v| &v.p)
    }
}

/// Verdicts for every prime dividing `disc(P_n)` or the leading
/// coefficient of `P_n`.
pub fn ramified_primes_at_level<E: PrimeExecutor>(
    map: &RationalMapP1,
    alpha: &ProjPointQ,
    n: usize,
    budget: &Budgets,
    exec: &E,
) -> Result<LevelReport> {
    let pre = preimage_poly(map, alpha, n, budget)?;
    let poly = &pre.poly;
    let g = poly.gcd(&poly.derivative());
    if !g.is_constant() {
        return Err(Error::AlphaPostcritical { level: n, gcd: format!("{g}") });
    }
    if pre.degree_drop >= 2 {
        return Err(Error::AlphaPostcritical { level: n, gcd: format!("y^{}", pre.degree_drop) });
    }
    let disc = if poly.deg() >= 1 { discriminant(poly)? } else { Zero::zero() };
    let mut candidates: Vec<BigUint> = Vec::new();
    let mut unknown_cofactor_bits = 0;
    if !disc.is_zero() {
        let fac = factor_integer(&disc, budget)?;
        candidates.extend(fac.primes().cloned());
        unknown_cofactor_bits += fac.unknown().map_or(0, |c| c.bits());
    }
    let lc_fac = factor_integer(&poly.lc(), budget)?;
    candidates.extend(lc_fac.primes().cloned());
    unknown_cofactor_bits += lc_fac.unknown().map_or(0, |c| c.bits());
    candidates.sort();
    candidates.dedup();

    let factorization = factor_poly(poly, budget)?;
    let factors: Vec<UniPoly> = factorization.factors.iter().map(|f| f.poly.clone()).collect();
    let formal = pre.formal_degree();
    let verdicts = exec.map_primes(&candidates, &|p| prime_verdict(poly, formal, &factors, p));
    Ok(LevelReport {
        n,
        poly_degree: poly.deg(),
        degree_drop: pre.degree_drop,
        disc_bits: disc.bits(),
        factor_degrees: factorization.factors.iter().map(|f| f.degree()).collect(),
        factorization_complete: factorization.complete,
        verdicts,
        unknown_cofactor_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use alloc::string::ToString;

    fn map(s: &str) -> RationalMapP1 {
        RationalMapP1::parse(s).unwrap()
    }

    fn pre(m: &str, a: &str, n: usize) -> PreimagePoly {
        preimage_poly(&map(m), &ProjPointQ::parse(a).unwrap(), n, &Budgets::default()).unwrap()
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(pre("z^2", "2", 2).poly.to_string(), "x^4-2");
        assert_eq!(pre("z*(z-3)", "0", 1).poly.to_string(), "x^2-3*x");
        assert_eq!(pre("z^2+1", "0", 2).poly.to_string(), "x^4+2*x^2+2");
        let inf = pre("1/(z^2-2)", "0", 1);
        assert_eq!((inf.poly.to_string(), inf.degree_drop), ("1".into(), 2));
        let half = pre("z^2", "1/2", 1);
        assert_eq!(half.poly.to_string(), "2*x^2-1");
    }

    fn level(m: &str, a: &str, n: usize) -> LevelReport {
        ramified_primes_at_level(&map(m), &ProjPointQ::parse(a).unwrap(), n, &Budgets::default(), &Sequential).unwrap()
    }

    #[test]
    fn level_examples() {
        let r = level("z*(z-3)", "0", 1);
        assert_eq!(r.primes_with(RamStatus::Ramified).count(), 0);
        assert_eq!(r.verdicts.iter().map(|v| v.p.to_string()).collect::<Vec<_>>(), ["3"]);
        let r = level("z^2", "2", 1);
        assert_eq!(r.primes_with(RamStatus::Ramified).map(|p| p.to_string()).collect::<Vec<_>>(), ["2"]);
        let r = level("z^2+1", "0", 1);
        assert_eq!(r.primes_with(RamStatus::Ramified).map(|p| p.to_string()).collect::<Vec<_>>(), ["2"]);
    }

    #[test]
    fn postcritical_alpha_is_an_error() {
        let err = ramified_primes_at_level(&map("z^2-2"), &ProjPointQ::from_int(2), 2, &Budgets::default(), &Sequential);
        assert!(matches!(err, Err(Error::AlphaPostcritical { level: 2, .. })));
        let err = ramified_primes_at_level(&map("z^2"), &ProjPointQ::infinity(), 1, &Budgets::default(), &Sequential);
        assert!(matches!(err, Err(Error::AlphaPostcritical { .. })));
    }
}

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::budget::Budgets;
use crate::dynamics::{ProjPointQ, RationalMapP1};
use crate::error::{Error, Result};
use crate::exactmath::{factor_integer, IntFactorization};

use super::{vp_int, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRow {
    pub n: usize,
    pub value: ProjPointQ,
    /// `None` when the numerator is zero.
    pub numerator: Option<IntFactorization>,
    /// `None` when the value is infinity.
    pub denominator: Option<IntFactorization>,
}

fn factor_nonzero(x: &BigInt, budget: &Budgets) -> Result<Option<IntFactorization>> {
    if x.is_zero() {
        Ok(None)
    } else {
        factor_integer(x, budget).map(Some)
    }
}

fn orbit(map: &RationalMapP1, a: &ProjPointQ, n_max: usize) -> Vec<ProjPointQ> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(a.clone());
    for _ in 0..n_max {
        let next = map.evaluate(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// Rows `n = 1..=n_max` of the orbit of `a` in coprime form, with
/// factorizations under the given budget.
pub fn orbit_valuation_table(map: &RationalMapP1, a: &ProjPointQ, n_max: usize, budget: &Budgets) -> Result<Vec<OrbitRow>> {
    orbit(map, a, n_max)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(n, value)| {
            Ok(OrbitRow {
                n,
                numerator: factor_nonzero(value.a(), budget)?,
                denominator: factor_nonzero(value.b(), budget)?,
                value,
            })
        })
        .collect()
}

/// A prime `p` outside `S` with `v_p(phi^n(a)) = v > 0` and `e` not
/// dividing `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma12Witness {
    pub p: BigUint,
    pub n: usize,
    pub v: u32,
    pub residue: u32,
}

impl Lemma12Witness {
    /// Recomputes the valuation from a fresh iteration.
    pub fn verify(&self, map: &RationalMapP1, a: &ProjPointQ, e: u32, excluded: &[BigUint]) -> bool {
        let value = orbit(map, a, self.n).pop().expect("nonempty");
        if value.is_infinity() || excluded.contains(&self.p) || e == 0 {
            return false;
        }
        let v = match (vp_int(value.a(), &self.p), vp_int(value.b(), &self.p)) {
            (Valuation::Finite(x), Valuation::Finite(y)) => x - y,
            _ => return false,
        };
        v > 0 && v == self.v as i64 && v % e as i64 != 0 && self.residue == self.v % e
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma12Search {
    /// Ordered by `n`, then `p`.
    pub witnesses: Vec<Lemma12Witness>,
    /// Rows whose numerator was not completely factored, with the
    /// unsplit cofactor.
    pub unfactored: Vec<(usize, BigUint)>,
}

/// Searches `n = 1..=n_max` for primes outside `excluded` at which
/// `v_p(phi^n(a))` is positive and not divisible by `e`.
///
/// An empty result means none were found within the budget, not that none
/// exist.
pub fn lemma12_search(
    map: &RationalMapP1,
    a: &ProjPointQ,
    e: u32,
    excluded: &[BigUint],
    n_max: usize,
    budget: &Budgets,
) -> Result<Lemma12Search> {
    if e < 2 {
        return Err(Error::InvalidArgument("e must be at least 2".into()));
    }
    let points = orbit(map, a, n_max);
    for j in 1..points.len() {
        if let Some(i) = points[..j].iter().position(|q| *q == points[j]) {
            return Err(Error::Preperiodic { tail: i, period: j - i });
        }
    }
    let mut out = Lemma12Search { witnesses: Vec::new(), unfactored: Vec::new() };
    for (n, value) in points.iter().enumerate().skip(1) {
        if value.is_infinity() || value.a().is_zero() {
            continue;
        }
        let fac = factor_integer(value.a(), budget)?;
        if let Some(c) = fac.unknown() {
            out.unfactored.push((n, c.clone()));
        }
        for (p, v) in &fac.factors {
            if !excluded.contains(p) && v % e != 0 {
                out.witnesses.push(Lemma12Witness { p: p.clone(), n, v: *v, residue: v % e });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn map(s: &str) -> RationalMapP1 {
        RationalMapP1::parse(s).unwrap()
    }

    fn primes(ps: &[u32]) -> Vec<BigUint> {
        ps.iter().map(|&p| BigUint::from(p)).collect()
    }

    #[test]
    fn orbit_table() {
        let rows = orbit_valuation_table(&map("z^2+1"), &ProjPointQ::from_int(0), 4, &Budgets::default()).unwrap();
        let vals: Vec<String> = rows.iter().map(|r| r.value.to_string()).collect();
        assert_eq!(vals, ["1", "2", "5", "26"]);
        assert_eq!(rows[3].numerator.as_ref().unwrap().factors, vec![(2u32.into(), 1), (13u32.into(), 1)]);
        let rows = orbit_valuation_table(&map("z^2"), &ProjPointQ::from_int(3), 3, &Budgets::default()).unwrap();
        let exps: Vec<u32> = rows.iter().map(|r| r.numerator.as_ref().unwrap().factors[0].1).collect();
        assert_eq!(exps, [2, 4, 8]);
    }

    #[test]
    fn witnesses() {
        let f = map("z^2+1");
        let zero = ProjPointQ::from_int(0);
        let b = Budgets::default();
        let s = lemma12_search(&f, &zero, 2, &primes(&[2]), 5, &b).unwrap();
        let w5 = Lemma12Witness { p: 5u32.into(), n: 3, v: 1, residue: 1 };
        assert!(s.witnesses.contains(&w5));
        assert!(w5.verify(&f, &zero, 2, &primes(&[2])));
        let s = lemma12_search(&f, &zero, 2, &primes(&[2, 5]), 5, &b).unwrap();
        assert!(s.witnesses.contains(&Lemma12Witness { p: 13u32.into(), n: 4, v: 1, residue: 1 }));
        assert!(s.witnesses.iter().all(|w| w.p != BigUint::from(5u32)));
        let sq = lemma12_search(&map("z^2"), &ProjPointQ::from_int(2), 2, &primes(&[2]), 5, &b).unwrap();
        assert!(sq.witnesses.is_empty());
    }

    #[test]
    fn preperiodic_start_is_rejected() {
        let err = lemma12_search(&map("z^2-2"), &ProjPointQ::from_int(0), 2, &[], 5, &Budgets::default());
        assert_eq!(err.unwrap_err(), Error::Preperiodic { tail: 2, period: 1 });
    }
}

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{ramified_primes_at_level, LevelReport, RamStatus};
use crate::budget::Budgets;
use crate::dynamics::{is_exceptional, pcf_check, reduction_bad_primes, Divisor, PcfStatus, ProjPointQ, RationalMapP1};
use crate::error::{Error, Result};
use crate::exactmath::factor_integer;
use crate::exec::PrimeExecutor;

/// Level budget used to close up the postcritical divisor for predictions.
pub const PREDICTION_LEVELS: usize = 10;
const PREDICTION_BITS: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedBadSet {
    pub pcf: PcfStatus,
    /// The postcritical divisor used for collisions; for non-PCF maps it is
    /// only the part computed within the level budget.
    pub postcritical: Divisor,
    /// Ascending primes with the reasons each was predicted.
    pub primes: Vec<(BigUint, Vec<String>)>,
    /// Unfactored parts of the quantities whose supports form the set.
    pub unknown: Vec<BigUint>,
    pub warning: Option<String>,
}

impl PredictedBadSet {
    pub fn contains(&self, p: &BigUint) -> bool {
        self.primes.iter().any(|(q, _)| q == p)
    }

    pub fn prime_list(&self) -> Vec<BigUint> {
        self.primes.iter().map(|(p, _)| p.clone()).collect()
    }

    fn add(&mut self, p: &BigUint, why: String) {
        match self.primes.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => self.primes[i].1.push(why),
            Err(i) => self.primes.insert(i, (p.clone(), alloc::vec![why])),
        }
    }
}

/// Primes of bad reduction, of inseparable reduction, and those modulo
/// which `alpha` meets the postcritical set.
pub fn predicted_bad_set(map: &RationalMapP1, alpha: &ProjPointQ, budget: &Budgets) -> Result<PredictedBadSet> {
    let verdict = pcf_check(map, PREDICTION_LEVELS, PREDICTION_BITS)?;
    let postcritical = verdict.divisor.clone();
    let warning = (verdict.status != PcfStatus::Pcf).then(|| {
        format!(
            "map is {}: the prediction only covers the postcritical points found up to level {}",
            verdict.status.as_str(),
            verdict.level
        )
    });
    let mut out = PredictedBadSet { pcf: verdict.status, postcritical, primes: Vec::new(), unknown: Vec::new(), warning };
    let classes = reduction_bad_primes(map, budget)?;
    for p in &classes.bad_reduction {
        out.add(p, "bad reduction".into());
    }
    for p in &classes.inseparable_reduction {
        out.add(p, "inseparable reduction".into());
    }
    out.unknown.extend(classes.bad_unknown.iter().chain(&classes.inseparable_unknown).cloned());

    let dv = &out.postcritical;
    if dv.contains_point(alpha) {
        return Err(Error::AlphaPostcritical { level: 0, gcd: format!("alpha lies in the postcritical set {dv}") });
    }
    let mut collisions: Vec<(BigInt, String)> = Vec::new();
    let m = dv.poly().deg();
    if m > 0 {
        let value = dv.poly().eval_homogeneous(alpha.a(), alpha.b(), m);
        collisions.push((value, "alpha meets a finite postcritical point".into()));
    }
    if dv.infinity {
        collisions.push((alpha.b().clone(), "alpha meets infinity".into()));
    }
    for (value, why) in collisions {
        if value.is_zero() {
            continue;
        }
        let fac = factor_integer(&value, budget)?;
        for p in fac.primes() {
            out.add(p, why.clone());
        }
        out.unknown.extend(fac.unknown().cloned());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub map: String,
    pub alpha: String,
    pub levels: Vec<LevelReport>,
    /// `S_{<=n}` after each computed level.
    pub cumulative_by_level: Vec<Vec<BigUint>>,
    /// Primes dividing some discriminant or leading coefficient so far.
    pub candidates_by_level: Vec<Vec<BigUint>>,
    pub predicted: PredictedBadSet,
    /// First level from which the cumulative set no longer grew; `None`
    /// when it still grew at the last computed level.
    pub stabilized_at: Option<usize>,
    /// For PCF maps: whether every ramified prime lies in the predicted set.
    pub contained_in_prediction: Option<bool>,
    /// Primes with an `Unknown` verdict at some level.
    pub unknown: Vec<BigUint>,
    /// Set when a budget stopped the run before `n_max`.
    pub exhausted: Option<String>,
}

impl RamificationReport {
    pub fn cumulative(&self) -> &[BigUint] {
        self.cumulative_by_level.last().map_or(&[], Vec::as_slice)
    }
}

pub fn stabilization_experiment<E: PrimeExecutor>(
    map: &RationalMapP1,
    alpha: &ProjPointQ,
    n_max: usize,
    budget: &Budgets,
    exec: &E,
) -> Result<RamificationReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("need at least one level".into()));
    }
    let ex = is_exceptional(map, alpha, budget)?;
    if ex.exceptional {
        return Err(Error::Exceptional { support: ex.backward.to_string() });
    }
    let predicted = predicted_bad_set(map, alpha, budget)?;
    let mut report = RamificationReport {
        map: map.to_string(),
        alpha: alpha.to_string(),
        levels: Vec::new(),
        cumulative_by_level: Vec::new(),
        candidates_by_level: Vec::new(),
        predicted,
        stabilized_at: None,
        contained_in_prediction: None,
        unknown: Vec::new(),
        exhausted: None,
    };
    let mut cumulative: Vec<BigUint> = Vec::new();
    let mut candidates: Vec<BigUint> = Vec::new();
    for n in 1..=n_max {
        let level = match ramified_primes_at_level(map, alpha, n, budget, exec) {
            Ok(l) => l,
            Err(e @ Error::Budget { .. }) => {
                report.exhausted = Some(format!("level {n}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        };
        cumulative.extend(level.primes_with(RamStatus::Ramified).cloned());
        cumulative.sort();
        cumulative.dedup();
        candidates.extend(level.verdicts.iter().map(|v| v.p.clone()));
        candidates.sort();
        candidates.dedup();
        report.unknown.extend(level.primes_with(RamStatus::Unknown).cloned());
        report.levels.push(level);
        report.cumulative_by_level.push(cumulative.clone());
        report.candidates_by_level.push(candidates.clone());
    }
    report.unknown.sort();
    report.unknown.dedup();
    let sets = &report.cumulative_by_level;
    if let Some(last) = sets.last() {
        let first = sets.iter().position(|s| s == last).expect("last set is present") + 1;
        let grew_at_end = sets.len() >= 2 && first == sets.len();
        report.stabilized_at = (!grew_at_end).then_some(first);
    }
    if report.predicted.pcf == PcfStatus::Pcf {
        report.contained_in_prediction = Some(cumulative.iter().all(|p| report.predicted.contains(p)));
    }
    Ok(report)
}

/// Per-prime wild-ramification candidates across all levels, ascending.
pub fn wildness_indicator(report: &RamificationReport) -> Vec<(BigUint, bool)> {
    let mut out: Vec<(BigUint, bool)> = Vec::new();
    for v in report.levels.iter().flat_map(|l| &l.verdicts) {
        match out.binary_search_by(|(p, _)| p.cmp(&v.p)) {
            Ok(i) => out[i].1 |= v.wild_candidate,
            Err(i) => out.insert(i, (v.p.clone(), v.wild_candidate)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;

    fn map(s: &str) -> RationalMapP1 {
        RationalMapP1::parse(s).unwrap()
    }

    fn set(ps: &[u32]) -> Vec<BigUint> {
        ps.iter().map(|&p| BigUint::from(p)).collect()
    }

    fn predicted(m: &str, a: i64) -> Vec<BigUint> {
        predicted_bad_set(&map(m), &ProjPointQ::from_int(a), &Budgets::default()).unwrap().prime_list()
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted("z^2", 2), set(&[2]));
        assert_eq!(predicted("z^2-2", 3), set(&[2, 5]));
        assert_eq!(predicted("z^2", 3), set(&[2, 3]));
        assert_eq!(predicted("z^2-1", 3), set(&[2, 3]));
    }

    #[test]
    fn square_map_stabilizes() {
        let r = stabilization_experiment(&map("z^2"), &ProjPointQ::from_int(2), 5, &Budgets::default(), &Sequential)
            .unwrap();
        assert!(r.cumulative_by_level.iter().all(|s| *s == set(&[2])));
        assert_eq!(r.stabilized_at, Some(1));
        assert_eq!(r.contained_in_prediction, Some(true));
        assert_eq!(wildness_indicator(&r), [(BigUint::from(2u32), true)]);
    }

    #[test]
    fn exceptional_alpha_is_rejected() {
        let r = stabilization_experiment(&map("z^2"), &ProjPointQ::from_int(0), 3, &Budgets::default(), &Sequential);
        assert!(matches!(r, Err(Error::Exceptional { .. })));
    }

    #[test]
    fn discriminant_prime_without_ramification() {
        let r = stabilization_experiment(&map("z*(z-3)"), &ProjPointQ::from_int(0), 1, &Budgets::default(), &Sequential)
            .unwrap();
        assert!(r.cumulative().is_empty());
        assert!(wildness_indicator(&r).iter().all(|(_, w)| !w));
    }
}

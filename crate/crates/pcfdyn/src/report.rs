//! Serializable reports, one per subcommand. Every document carries
//! `"schema": 1`; primes and other big integers are strings.

use num_bigint::BigUint;
use serde::Serialize;

use pcfdyn_core::dynamics::{PcfVerdict, ProjPointQ, RationalMapP1};
use pcfdyn_core::multivar::VerificationReport;
use pcfdyn_core::padic::{root_valuation_multiset, Lemma12Search, NewtonPolygon, OrbitRow};
use pcfdyn_core::ramify::{wildness_indicator, PredictedBadSet, RamificationReport};
use pcfdyn_core::IntFactorization;

use crate::render::{Report, Table};

pub const SCHEMA: u32 = 1;

fn strs(ps: &[BigUint]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn set_string(ps: &[String]) -> String {
    format!("{{{}}}", ps.join(", "))
}

#[derive(Serialize, Debug, Clone)]
pub struct PcfReport {
    pub schema: u32,
    pub map: String,
    pub status: String,
    pub level: usize,
    pub critical: String,
    pub postcritical: String,
    pub witness: Option<String>,
    pub height_bound: String,
    pub incomplete: bool,
    pub exhausted: Option<String>,
}

impl PcfReport {
    pub fn new(map: &RationalMapP1, v: &PcfVerdict) -> Self {
        PcfReport {
            schema: SCHEMA,
            map: map.to_string(),
            status: v.status.as_str().into(),
            level: v.level,
            critical: v.critical.to_string(),
            postcritical: v.divisor.to_string(),
            witness: v.witness.as_ref().map(ToString::to_string),
            height_bound: v.bound.describe(),
            incomplete: v.exhausted.is_some(),
            exhausted: v.exhausted.clone(),
        }
    }
}

impl Report for PcfReport {
    fn title(&self) -> String {
        format!("PCF check for {}", self.map)
    }
    fn summary(&self) -> Vec<(&'static str, String)> {
        let mut s = vec![
            ("status", self.status.clone()),
            ("level", self.level.to_string()),
            ("critical points", self.critical.clone()),
            ("postcritical divisor", self.postcritical.clone()),
            ("height bound", self.height_bound.clone()),
        ];
        if let Some(w) = &self.witness {
            s.push(("witness", format!("{w} = 0 has a root of height above the bound")));
        }
        if let Some(e) = &self.exhausted {
            s.push(("incomplete", e.clone()));
        }
        s
    }
    fn table(&self) -> Table {
        Table {
            headers: vec!["map", "status", "level", "critical", "postcritical", "witness", "height_bound"],
            rows: vec![vec![
                self.map.clone(),
                self.status.clone(),
                self.level.to_string(),
                self.critical.clone(),
                self.postcritical.clone(),
                self.witness.clone().unwrap_or_default(),
                self.height_bound.clone(),
            ]],
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct PredictedPrime {
    pub p: String,
    pub reasons: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct PredictedReport {
    pub schema: u32,
    pub map: String,
    pub alpha: String,
    pub pcf: String,
    pub postcritical: String,
    pub primes: Vec<PredictedPrime>,
    pub unknown: Vec<String>,
    pub warning: Option<String>,
}

fn predicted_primes(p: &PredictedBadSet) -> Vec<PredictedPrime> {
    p.primes.iter().map(|(q, r)| PredictedPrime { p: q.to_string(), reasons: r.clone() }).collect()
}

impl PredictedReport {
    pub fn new(map: &RationalMapP1, alpha: &ProjPointQ, p: &PredictedBadSet) -> Self {
        PredictedReport {
            schema: SCHEMA,
            map: map.to_string(),
            alpha: alpha.to_string(),
            pcf: p.pcf.as_str().into(),
            postcritical: p.postcritical.to_string(),
            primes: predicted_primes(p),
            unknown: strs(&p.unknown),
            warning: p.warning.clone(),
        }
    }
}

impl Report for PredictedReport {
    fn title(&self) -> String {
        format!("Predicted bad primes for {} at alpha = {}", self.map, self.alpha)
    }
    fn summary(&self) -> Vec<(&'static str, String)> {
        let ps: Vec<String> = self.primes.iter().map(|p| p.p.clone()).collect();
        let mut s = vec![
            ("map status", self.pcf.clone()),
            ("postcritical divisor", self.postcritical.clone()),
            ("predicted set", set_string(&ps)),
        ];
        if !self.unknown.is_empty() {
            s.push(("unfactored", self.unknown.join(", ")));
        }
        if let Some(w) = &self.warning {
            s.push(("warning", w.clone()));
        }
        s
    }
    fn table(&self) -> Table {
        Table {
            headers: vec!["p", "reasons"],
            rows: self.primes.iter().map(|p| vec![p.p.clone(), p.reasons.join("; ")]).collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct VerdictJson {
    pub p: String,
    pub status: String,
    pub wild_candidate: bool,
    pub evidence: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct LevelJson {
    pub n: usize,
    pub poly_degree: usize,
    pub degree_drop: usize,
    pub disc_bits: u64,
    pub factor_degrees: Vec<usize>,
    pub factorization_complete: bool,
    pub verdicts: Vec<VerdictJson>,
    pub unknown_cofactor_bits: u64,
    pub candidates: Vec<String>,
    pub cumulative: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct WildJson {
    pub p: String,
    pub wild_candidate: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct RamifyReport {
    pub schema: u32,
    pub map: String,
    pub alpha: String,
    pub pcf: String,
    pub levels: Vec<LevelJson>,
    pub predicted_bad_set: Vec<PredictedPrime>,
    pub predicted_unknown: Vec<String>,
    pub prediction_warning: Option<String>,
    pub cumulative: Vec<String>,
    pub stabilized_at: Option<usize>,
    pub contained_in_prediction: Option<bool>,
    pub unknown: Vec<String>,
    /// Heuristic only: a repeated factor mod p with multiplicity divisible by p.
    pub wildness: Vec<WildJson>,
    pub incomplete: bool,
    pub exhausted: Option<String>,
}

impl RamifyReport {
    pub fn new(r: &RamificationReport) -> Self {
        let levels = r
            .levels
            .iter()
            .zip(&r.cumulative_by_level)
            .zip(&r.candidates_by_level)
            .map(|((l, cum), cand)| LevelJson {
                n: l.n,
                poly_degree: l.poly_degree,
                degree_drop: l.degree_drop,
                disc_bits: l.disc_bits,
                factor_degrees: l.factor_degrees.clone(),
                factorization_complete: l.factorization_complete,
                verdicts: l
                    .verdicts
                    .iter()
                    .map(|v| VerdictJson {
                        p: v.p.to_string(),
                        status: v.status.as_str().into(),
                        wild_candidate: v.wild_candidate,
                        evidence: v.evidence.clone(),
                    })
                    .collect(),
                unknown_cofactor_bits: l.unknown_cofactor_bits,
                candidates: strs(cand),
                cumulative: strs(cum),
            })
            .collect();
        let incomplete = r.exhausted.is_some() || r.levels.iter().any(|l| l.unknown_cofactor_bits > 0);
        RamifyReport {
            schema: SCHEMA,
            map: r.map.clone(),
            alpha: r.alpha.clone(),
            pcf: r.predicted.pcf.as_str().into(),
            levels,
            predicted_bad_set: predicted_primes(&r.predicted),
            predicted_unknown: strs(&r.predicted.unknown),
            prediction_warning: r.predicted.warning.clone(),
            cumulative: strs(r.cumulative()),
            stabilized_at: r.stabilized_at,
            contained_in_prediction: r.contained_in_prediction,
            unknown: strs(&r.unknown),
            wildness: wildness_indicator(r)
                .into_iter()
                .map(|(p, w)| WildJson { p: p.to_string(), wild_candidate: w })
                .collect(),
            incomplete,
            exhausted: r.exhausted.clone(),
        }
    }
}

impl Report for RamifyReport {
    fn title(&self) -> String {
        format!("Ramification of preimages of {} under {}", self.alpha, self.map)
    }
    fn summary(&self) -> Vec<(&'static str, String)> {
        let predicted: Vec<String> = self.predicted_bad_set.iter().map(|p| p.p.clone()).collect();
        let mut s = vec![
            ("map status", self.pcf.clone()),
            ("levels computed", self.levels.len().to_string()),
            ("cumulative ramified", set_string(&self.cumulative)),
            ("predicted set", set_string(&predicted)),
            (
                "stabilized at",
                self.stabilized_at.map_or("growing at budget".into(), |n| format!("level {n}")),
            ),
        ];
        if let Some(c) = self.contained_in_prediction {
            s.push(("contained in prediction", c.to_string()));
        }
        if !self.unknown.is_empty() {
            s.push(("unknown verdicts", set_string(&self.unknown)));
        }
        if let Some(w) = &self.prediction_warning {
            s.push(("warning", w.clone()));
        }
        if let Some(e) = &self.exhausted {
            s.push(("incomplete", e.clone()));
        }
        s
    }
    fn table(&self) -> Table {
        let rows = self
            .levels
            .iter()
            .flat_map(|l| {
                l.verdicts.iter().map(move |v| {
                    vec![
                        l.n.to_string(),
                        v.p.clone(),
                        v.status.clone(),
                        v.wild_candidate.to_string(),
                        v.evidence.clone(),
                    ]
                })
            })
            .collect();
        Table { headers: vec!["n", "p", "status", "wild_candidate", "evidence"], rows }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct PrimePower {
    pub p: String,
    pub e: u32,
}

#[derive(Serialize, Debug, Clone)]
pub struct FactoredJson {
    pub value: String,
    pub factors: Vec<PrimePower>,
    pub cofactor: Option<String>,
}

impl FactoredJson {
    fn new(f: &IntFactorization) -> Self {
        FactoredJson {
            value: f.value().to_string(),
            factors: f.factors.iter().map(|(p, e)| PrimePower { p: p.to_string(), e: *e }).collect(),
            cofactor: f.unknown().map(ToString::to_string),
        }
    }

    fn describe(&self) -> String {
        let mut parts: Vec<String> =
            self.factors.iter().map(|f| if f.e == 1 { f.p.clone() } else { format!("{}^{}", f.p, f.e) }).collect();
        if let Some(c) = &self.cofactor {
            parts.push(format!("[{c}]"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct OrbitRowJson {
    pub n: usize,
    pub value: String,
    pub numerator: Option<FactoredJson>,
    pub denominator: Option<FactoredJson>,
}

#[derive(Serialize, Debug, Clone)]
pub struct OrbitReport {
    pub schema: u32,
    pub map: String,
    pub a: String,
    pub rows: Vec<OrbitRowJson>,
    pub incomplete: bool,
}

impl OrbitReport {
    pub fn new(map: &RationalMapP1, a: &ProjPointQ, rows: &[OrbitRow]) -> Self {
        let rows: Vec<OrbitRowJson> = rows
            .iter()
            .map(|r| OrbitRowJson {
                n: r.n,
                value: r.value.to_string(),
                numerator: r.numerator.as_ref().map(FactoredJson::new),
                denominator: r.denominator.as_ref().map(FactoredJson::new),
            })
            .collect();
        let incomplete = rows
            .iter()
            .flat_map(|r| r.numerator.iter().chain(&r.denominator))
            .any(|f| f.cofactor.is_some());
        OrbitReport { schema: SCHEMA, map: map.to_string(), a: a.to_string(), rows, incomplete }
    }
}

impl Report for OrbitReport {
    fn title(&self) -> String {
        format!("Orbit of {} under {}", self.a, self.map)
    }
    fn summary(&self) -> Vec<(&'static str, String)> {
        vec![("rows", self.rows.len().to_string()), ("incomplete", self.incomplete.to_string())]
    }
    fn table(&self) -> Table {
        let show = |f: &Option<FactoredJson>, zero: &str| f.as_ref().map_or(zero.to_string(), FactoredJson::describe);
        Table {
            headers: vec!["n", "value", "numerator", "denominator"],
            rows: self
                .rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.value.clone(), show(&r.numerator, "0"), show(&r.denominator, "0")])
                .collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct WitnessJson {
    pub p: String,
    pub n: usize,
    pub v: u32,
    pub residue: u32,
}

#[derive(Serialize, Debug, Clone)]
pub struct UnfactoredJson {
    pub n: usize,
    pub cofactor: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct Lemma12Report {
    pub schema: u32,
    pub map: String,
    pub a: String,
    pub e: u32,
    pub excluded: Vec<String>,
    pub levels: usize,
    pub witnesses: Vec<WitnessJson>,
    pub unfactored: Vec<UnfactoredJson>,
    pub note: &'static str,
}

impl Lemma12Report {
    pub fn new(
        map: &RationalMapP1,
        a: &ProjPointQ,
        e: u32,
        excluded: &[BigUint],
        levels: usize,
        s: &Lemma12Search,
    ) -> Self {
        Lemma12Report {
            schema: SCHEMA,
            map: map.to_string(),
            a: a.to_string(),
            e,
            excluded: strs(excluded),
            levels,
            witnesses: s
                .witnesses
                .iter()
                .map(|w| WitnessJson { p: w.p.to_string(), n: w.n, v: w.v, residue: w.residue })
                .collect(),
            unfactored: s.unfactored.iter().map(|(n, c)| UnfactoredJson { n: *n, cofactor: c.to_string() }).collect(),
            note: "search only: an empty list means none found within the levels and factoring budget",
        }
    }
}

impl Report for Lemma12Report {
    fn title(&self) -> String {
        format!("Valuation witnesses for the orbit of {} under {}", self.a, self.map)
    }
    fn summary(&self) -> Vec<(&'static str, String)> {
        let mut s = vec![
            ("e", self.e.to_string()),
            ("excluded primes", set_string(&self.excluded)),
            ("levels searched", self.levels.to_string()),
            ("witnesses", self.witnesses.len().to_string()),
        ];
        if !self.unfactored.is_empty() {
            let rows: Vec<String> = self.unfactored.iter().map(|u| u.n.to_string()).collect();
            s.push(("unfactored rows", rows.join(", ")));
        }
        s.push(("note", self.note.into()));
        s
    }
    fn table(&self) -> Table {
        Table {
            headers: vec!["p", "n", "v", "v mod e"],
            rows: self
                .witnesses
                .iter()
                .map(|w| vec![w.p.clone(), w.n.to_string(), w.v.to_string(), w.residue.to_string()])
                .collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SegmentJson {
    pub slope: String,
    pub length: usize,
}

#[derive(Serialize, Debug, Clone)]
pub struct NewtonReport {
    pub schema: u32,
    pub poly: String,
    pub p: String,
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<SegmentJson>,
    pub zero_roots: usize,
    pub root_valuations: Vec<String>,
}

impl NewtonReport {
    pub fn new(poly: &str, np: &NewtonPolygon) -> Self {
        NewtonReport {
            schema: SCHEMA,
            poly: poly.into(),
            p: np.p.to_string(),
            vertices: np.vertices.clone(),
            segments: np
                .segments
                .iter()
                .map(|s| SegmentJson { slope: s.slope.to_string(), length: s.length })
                .collect(),
            zero_roots: np.zero_roots(),
            root_valuations: root_valuation_multiset(np).iter().map(ToString::to_string).collect(),
        }
    }
}

impl Report for NewtonReport {
    fn title(&self) -> String {
        format!("Newton polygon of {} at {}", self.poly, self.p)
    }
    fn summary(&self) -> Vec<(&'static str, String)> {
        let v: Vec<String> = self.vertices.iter().map(|(i, v)| format!("({i},{v})")).collect();
        vec![
            ("vertices", v.join(" ")),
            ("roots at zero", self.zero_roots.to_string()),
            ("root valuations", set_string(&self.root_valuations)),
        ]
    }
    fn table(&self) -> Table {
        Table {
            headers: vec!["slope", "length"],
            rows: self.segments.iter().map(|s| vec![s.slope.clone(), s.length.to_string()]).collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckJson {
    pub check_id: String,
    pub passed: bool,
    pub evidence: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct VerificationJson {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

impl VerificationJson {
    pub fn new(r: &VerificationReport) -> Self {
        VerificationJson {
            name: r.name.clone(),
            passed: r.all_passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson { check_id: c.check_id.clone(), passed: c.passed, evidence: c.evidence.clone() })
                .collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct VerifyReport {
    pub schema: u32,
    pub all_passed: bool,
    pub reports: Vec<VerificationJson>,
}

impl VerifyReport {
    pub fn new(reports: Vec<VerificationJson>) -> Self {
        VerifyReport { schema: SCHEMA, all_passed: reports.iter().all(|r| r.passed), reports }
    }
}

impl Report for VerifyReport {
    fn title(&self) -> String {
        "Exact checks of the worked examples".into()
    }
    fn summary(&self) -> Vec<(&'static str, String)> {
        vec![("all passed", self.all_passed.to_string())]
    }
    fn table(&self) -> Table {
        Table {
            headers: vec!["example", "check", "passed", "evidence"],
            rows: self
                .reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        vec![r.name.clone(), c.check_id.clone(), c.passed.to_string(), c.evidence.clone()]
                    })
                })
                .collect(),
        }
    }
}

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::map::{image_of_line, jacobian_det, line_form, normalize_line, restrict_to_line, MapPN};
use super::poly::MultiPoly;
use crate::dynamics::{critical_wronskian, forward_image, pcf_check, Divisor, PcfStatus, RationalMapP1};
use crate::error::Result;
use crate::exactmath::{factor_poly, UniPoly};
use crate::Budgets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check_id: String,
    pub passed: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    fn push(&mut self, id: &str, outcome: Result<(bool, String)>) {
        let (passed, evidence) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(CheckResult { check_id: id.into(), passed, evidence });
    }
}

const PARAM_LEVELS: usize = 8;
const CLOSURE_LIMIT: usize = 64;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn line_str(l: &[BigInt]) -> String {
    line_form(l).to_string()
}

/// The map `[l1^2 : l2^2 : l3^2]` for linear forms `l_i`.
pub fn squares_of_lines(lines: &[[i64; 3]; 3]) -> MapPN {
    let coords = lines.iter().map(|l| MultiPoly::linear(l).pow(2)).collect();
    MapPN::new(coords).expect("squares of nonzero linear forms")
}

pub const DUPONT_LINES: [[i64; 3]; 3] = [[1, -1, 1], [1, 1, -1], [-1, 1, 1]];

pub fn dupont_map() -> MapPN {
    squares_of_lines(&DUPONT_LINES)
}

/// The restriction of the third iterate to `x = y`, `z = 1`.
pub fn dupont_restriction() -> Result<(UniPoly, UniPoly)> {
    restrict_to_line(&dupont_map().iterate(3)?, &[1, 1, 0], &[0, 0, 1])
}

pub fn verify_dupont() -> VerificationReport {
    verify_dupont_with(&DUPONT_LINES)
}

/// Runs the checks for `[l1^2 : l2^2 : l3^2]`, where the `l_i` are the
/// candidate critical lines.
pub fn verify_dupont_with(lines: &[[i64; 3]; 3]) -> VerificationReport {
    let map = squares_of_lines(lines);
    let mut report = VerificationReport { name: "dupont".into(), checks: Vec::new() };
    report.push("a", jacobian_is_line_product(&map, lines));
    report.push("b", critical_closure(&map, lines));
    report.push("c", diagonal_cycle(&map));
    let restricted = restrict_to_line(&map.iterate(3).unwrap_or(map.clone()), &[1, 1, 0], &[0, 0, 1])
        .and_then(|(n, d)| RationalMapP1::from_ratfun(&n, &d));
    report.push("d", restricted.clone().and_then(|r| critical_total(&r)));
    report.push("e", restricted.clone().and_then(|r| critical_values(&r)));
    report.push("f", restricted.and_then(|r| {
        let v = pcf_check(&r, PARAM_LEVELS, 4096)?;
        Ok((v.status == PcfStatus::Pcf, format!("{} at level {}, postcritical set {}", v.status.as_str(), v.level, v.divisor)))
    }));
    report
}

fn jacobian_is_line_product(map: &MapPN, lines: &[[i64; 3]; 3]) -> Result<(bool, String)> {
    let j = jacobian_det(map)?;
    let prod = lines.iter().fold(MultiPoly::one(3), |acc, l| &acc * &MultiPoly::linear(l));
    let q = j.exact_divide(&prod)?;
    Ok(match q {
        Some(c) if c.is_constant() && !c.is_zero() => (true, format!("J = {c}*({})", line_products(lines))),
        _ => (false, format!("J = {j} is not a constant times {}", line_products(lines))),
    })
}

fn line_products(lines: &[[i64; 3]; 3]) -> String {
    lines.iter().map(|l| format!("({})", MultiPoly::linear(l))).collect::<Vec<_>>().join("*")
}

fn critical_closure(map: &MapPN, lines: &[[i64; 3]; 3]) -> Result<(bool, String)> {
    let target = ["x", "y", "z", "x - y", "y - z", "z - x"]
        .iter()
        .try_fold(MultiPoly::one(3), |acc, s| Ok::<_, crate::Error>(&acc * &MultiPoly::parse(s, &["x", "y", "z"])?))?;
    let mut seen: Vec<Vec<BigInt>> = Vec::new();
    let mut frontier: Vec<Vec<BigInt>> = lines.iter().map(|l| normalize_line(&ints(l))).collect();
    let mut steps = Vec::new();
    let mut rounds = 0;
    while let Some(l) = frontier.pop() {
        rounds += 1;
        if rounds > CLOSURE_LIMIT {
            return Ok((false, format!("no closure after {CLOSURE_LIMIT} line images")));
        }
        let Some(img) = image_of_line(map, &l)? else {
            return Ok((false, format!("image of {} = 0 is not a line", line_str(&l))));
        };
        steps.push(format!("{} -> {}", line_str(&l), line_str(&img)));
        if target.exact_divide(&line_form(&img))?.is_none() {
            return Ok((false, format!("{}; {} does not divide {target}", steps.join(", "), line_str(&img))));
        }
        if !seen.contains(&img) {
            seen.push(img.clone());
            frontier.push(img);
        }
    }
    let lines_seen: Vec<String> = seen.iter().map(|l| line_str(l)).collect();
    Ok((true, format!("{}; closure {{{}}} divides {target}", steps.join(", "), lines_seen.join(", "))))
}

fn diagonal_cycle(map: &MapPN) -> Result<(bool, String)> {
    let diagonals = [ints(&[1, -1, 0]), ints(&[0, 1, -1]), ints(&[1, 0, -1])];
    let mut images = Vec::new();
    for l in &diagonals {
        match image_of_line(map, l)? {
            Some(img) => images.push(img),
            None => return Ok((false, format!("image of {} = 0 is not a line", line_str(l)))),
        }
    }
    let perm: Option<Vec<usize>> = images.iter().map(|img| diagonals.iter().position(|d| d == img)).collect();
    let evidence = diagonals
        .iter()
        .zip(&images)
        .map(|(l, img)| format!("{} -> {}", line_str(l), line_str(img)))
        .collect::<Vec<_>>()
        .join(", ");
    let is_cycle = perm.is_some_and(|p| p.iter().enumerate().all(|(i, &j)| i != j) && p[p[p[0]]] == 0 && p[0] != p[1]);
    Ok((is_cycle, evidence))
}

fn critical_total(r: &RationalMapP1) -> Result<(bool, String)> {
    let w = critical_wronskian(r)?;
    let fac = factor_poly(&w.reduced.poly, &Budgets::default())?;
    let at_infinity = w.reduced.y_multiplicity();
    let finite: usize = fac.factors.iter().map(|f| f.degree() * f.exponent as usize).sum();
    let total = finite + at_infinity;
    let expected = 2 * r.degree() - 2;
    let parts: Vec<String> = fac.factors.iter().map(|f| format!("({})^{}", f.poly, f.exponent)).collect();
    Ok((
        total == expected,
        format!(
            "degree {}, critical multiplicity {total} = {finite} finite + {at_infinity} at infinity; W ~ {}",
            r.degree(),
            parts.join("*")
        ),
    ))
}

fn critical_values(r: &RationalMapP1) -> Result<(bool, String)> {
    let w = critical_wronskian(r)?;
    let crit = Divisor::new(&w.finite_critical_divisor(), w.infinity_critical);
    let values = forward_image(r, &crit);
    let expected = Divisor::new(&UniPoly::from_i64s(&[0, -1, 1]), true);
    Ok((values == expected, format!("critical values {values}")))
}

/// `phi = [x^2 - 2yz : y^2 - 2xz : z^2]`.
pub fn tchebyshev_map() -> MapPN {
    MapPN::parse("[x^2 - 2*y*z : y^2 - 2*x*z : z^2]").expect("valid map")
}

/// `pi(x, y) = (x + y + 1/(xy), 1/x + 1/y + xy)` with denominators cleared:
/// `[x^2 y + x y^2 + 1 : x + y + x^2 y^2 : x y]`.
pub fn tchebyshev_pi() -> Vec<MultiPoly> {
    ["x^2*y + x*y^2 + 1", "x + y + x^2*y^2", "x*y"]
        .iter()
        .map(|s| MultiPoly::parse(s, &["x", "y"]).expect("valid form"))
        .collect()
}

pub fn tchebyshev_quintic() -> MultiPoly {
    MultiPoly::parse("x^2*y^2 - 4*x^3*z - 4*y^3*z + 18*x*y*z^2 - 27*z^4", &["x", "y", "z"]).expect("valid form")
}

pub fn verify_tchebyshev() -> VerificationReport {
    verify_tchebyshev_with(&tchebyshev_pi())
}

pub fn verify_tchebyshev_with(pi: &[MultiPoly]) -> VerificationReport {
    let phi = tchebyshev_map();
    let mut report = VerificationReport { name: "tchebyshev".into(), checks: Vec::new() };
    report.push("a", semiconjugacy(&phi, pi));
    report.push("b", pi_ramification(pi));
    report.push("c", postcritical_curve(&phi));
    report
}

fn semiconjugacy(phi: &MapPN, pi: &[MultiPoly]) -> Result<(bool, String)> {
    let lhs = phi.apply(pi)?;
    let sq = [MultiPoly::var(2, 0).pow(2), MultiPoly::var(2, 1).pow(2)];
    let rhs: Vec<MultiPoly> = pi.iter().map(|c| c.substitute(&sq)).collect::<Result<_>>()?;
    for i in 0..3 {
        for j in i + 1..3 {
            let minor = &(&lhs[i] * &rhs[j]) - &(&lhs[j] * &rhs[i]);
            if !minor.is_zero() {
                return Ok((false, format!("coordinates {i},{j} not proportional: residual {minor}")));
            }
        }
    }
    let k = (0..3).find(|&k| !rhs[k].is_zero()).expect("nonzero coordinate");
    let lambda = lhs[k].exact_divide(&rhs[k])?;
    Ok((true, match lambda {
        Some(l) => format!("phi(pi) = ({l}) * pi(x^2, y^2)"),
        None => "phi(pi) and pi(x^2, y^2) are proportional".into(),
    }))
}

fn pi_ramification(pi: &[MultiPoly]) -> Result<(bool, String)> {
    // Affine coordinates X = N0/N2, Y = N1/N2, quotient rule with m = N2.
    let m = &pi[2];
    let quot = |n: &MultiPoly, i: usize| &(&n.derivative(i) * m) - &(n * &m.derivative(i));
    let det = &(&quot(&pi[0], 0) * &quot(&pi[1], 1)) - &(&quot(&pi[0], 1) * &quot(&pi[1], 0));
    if det.is_zero() {
        return Ok((false, "Jacobian vanishes identically".into()));
    }
    // det / m^4 is the Jacobian; strip the unit monomial of the Laurent ring.
    let mono = det.monomial_content();
    let cleared = det.div_monomial(&mono);
    let target = ["x - y", "x*y^2 - 1", "x^2*y - 1"]
        .iter()
        .try_fold(MultiPoly::one(2), |acc, s| Ok::<_, crate::Error>(&acc * &MultiPoly::parse(s, &["x", "y"])?))?;
    let passed = cleared == target || cleared == -&target;
    let names = ["x".to_string(), "y".to_string()];
    Ok((passed, format!(
        "Jacobian numerator = {} * ({}); expected +-(x - y)*(x*y^2 - 1)*(x^2*y - 1)",
        MultiPoly::term(BigInt::from(1), mono.0.clone()).to_string_with(&names),
        cleared.to_string_with(&names)
    )))
}

fn postcritical_curve(phi: &MapPN) -> Result<(bool, String)> {
    let j = jacobian_det(phi)?;
    let z = MultiPoly::var(3, 2);
    let conic = MultiPoly::parse("x*y - z^2", &["x", "y", "z"])?;
    let factored = j.exact_divide(&(&z * &conic))?;
    let Some(unit) = factored.filter(|u| u.is_constant()) else {
        return Ok((false, format!("J = {j} is not a constant times z*(x*y - z^2)")));
    };
    let curve = &z * &tchebyshev_quintic();
    let (s, t) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
    // Parametrizations of the two critical components.
    let params = [
        ("z", vec![s.clone(), t.clone(), MultiPoly::zero(2)]),
        ("x*y - z^2", vec![s.pow(2), t.pow(2), &s * &t]),
    ];
    let mut evidence = vec![format!("J = {unit}*z*(x*y - z^2)")];
    let mut passed = true;
    for (name, p) in &params {
        let image = phi.apply(p)?;
        let on_curve = curve.substitute(&image)?.is_zero();
        passed &= on_curve;
        evidence.push(format!("phi({name} = 0) {} z*Q = 0", if on_curve { "lies on" } else { "does not lie on" }));
    }
    let pulled = curve.substitute(phi.coords())?;
    let invariant = pulled.exact_divide(&curve)?.is_some();
    passed &= invariant;
    evidence.push(format!("z*Q divides (z*Q)(phi): {invariant}"));
    Ok((passed, evidence.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dupont_fixtures() {
        let (n, d) = dupont_restriction().unwrap();
        assert_eq!(n, UniPoly::from_i64s(&[-1, -4, 4]).pow(4));
        assert_eq!(d, UniPoly::from_i64s(&[1, -24, 40, -32, 16]).pow(2));
        let r = verify_dupont();
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.check_id, c.evidence);
        }
        assert!(r.check("d").unwrap().evidence.contains("multiplicity 14"));
    }

    #[test]
    fn dupont_jacobian() {
        let j = jacobian_det(&dupont_map()).unwrap();
        let prod = DUPONT_LINES.iter().fold(MultiPoly::one(3), |acc, l| &acc * &MultiPoly::linear(l));
        assert_eq!(j, prod.scale(&BigInt::from(32)));
    }

    #[test]
    fn perturbed_dupont_fails_closure() {
        let r = verify_dupont_with(&[[1, -1, 1], [1, 1, -1], [-1, 1, 2]]);
        assert!(r.check("a").unwrap().passed);
        assert!(!r.check("b").unwrap().passed);
    }

    #[test]
    fn tchebyshev_checks() {
        let r = verify_tchebyshev();
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.check_id, c.evidence);
        }
        let mut pi = tchebyshev_pi();
        pi[1] = MultiPoly::parse("x + y + x^2*y^2 + x*y", &["x", "y"]).unwrap();
        let r = verify_tchebyshev_with(&pi);
        assert!(!r.check("a").unwrap().passed);
    }

    #[test]
    fn lambda_is_one() {
        let r = verify_tchebyshev();
        assert!(r.check("a").unwrap().evidence.starts_with("phi(pi) = (1)"), "{}", r.check("a").unwrap().evidence);
    }
}

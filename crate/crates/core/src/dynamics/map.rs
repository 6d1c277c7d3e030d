use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::exactmath::{factor_integer, resultant_formal, BigRat, IntFactorization, UniPoly};
use crate::multivar::MultiPoly;
use crate::parse::{parse_expr, single_variable, split_bracketed, RatFun};

/// Homogeneous form of a given degree in `x, y`, stored through its
/// dehomogenization `F(x, 1)`. The coefficient of `x^i y^(d-i)` is
/// `poly.coeff(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryForm {
    pub degree: usize,
    pub poly: UniPoly,
}

impl BinaryForm {
    pub fn new(degree: usize, poly: UniPoly) -> Self {
        debug_assert!(poly.is_zero() || poly.deg() <= degree);
        BinaryForm { degree, poly }
    }

    /// Coefficients of `x^0 y^d, ..., x^d y^0`.
    pub fn coeffs(&self) -> Vec<BigInt> {
        (0..=self.degree).map(|i| self.poly.coeff(i)).collect()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.poly.coeff(i)
    }

    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.poly.eval_homogeneous(a, b, self.degree)
    }

    pub fn content(&self) -> BigInt {
        self.poly.content()
    }

    /// Multiplicity of the root at infinity, i.e. of `y` as a factor.
    pub fn y_multiplicity(&self) -> usize {
        if self.poly.is_zero() {
            self.degree
        } else {
            self.degree - self.poly.deg()
        }
    }

    pub fn to_multipoly(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(2);
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            out = &out + &MultiPoly::term(c.clone(), vec![i as u32, (self.degree - i) as u32]);
        }
        out
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_multipoly().to_string_with(&["x".into(), "y".into()]))
    }
}

/// A point of `P^1(Q)` as coprime integers `(a, b)` with `b >= 0`; infinity
/// is `(1, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProjPointQ {
    a: BigInt,
    b: BigInt,
}

impl ProjPointQ {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidArgument("the point [0:0] is not in P^1".into()));
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        if b.is_negative() || (b.is_zero() && a.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(ProjPointQ { a, b })
    }

    pub fn infinity() -> Self {
        ProjPointQ { a: BigInt::one(), b: BigInt::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        ProjPointQ { a: BigInt::from(n), b: BigInt::one() }
    }

    pub fn from_rat(r: &BigRat) -> Self {
        ProjPointQ { a: r.numer().clone(), b: r.denom().clone() }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = crate::parse::parse_point(s)?;
        Self::new(a, b)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rat(&self) -> Option<BigRat> {
        (!self.is_infinity()).then(|| BigRat::new(self.a.clone(), self.b.clone()))
    }

    /// `max(|a|, |b|)`.
    pub fn naive_height(&self) -> BigInt {
        self.a.abs().max(self.b.abs())
    }
}

impl fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("inf")
        } else if self.b.is_one() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}", self.a, self.b)
        }
    }
}

/// A self-map of `P^1` of degree `d >= 2` given by coprime integer forms
/// with jointly primitive coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMapP1 {
    f: BinaryForm,
    g: BinaryForm,
}

/// Builds a normalized map from raw coefficient lists (index `i` holds the
/// coefficient of `x^i y^(D-i)`).
pub fn normalize_map(raw_f: &[BigInt], raw_g: &[BigInt]) -> Result<RationalMapP1> {
    if raw_f.len() != raw_g.len() || raw_f.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "coefficient lists must have equal length at least 3 (got {} and {})",
            raw_f.len(),
            raw_g.len()
        )));
    }
    let big_d = raw_f.len() - 1;
    let f = UniPoly::new(raw_f.to_vec());
    let g = UniPoly::new(raw_g.to_vec());
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidArgument("both forms are zero".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::DegenerateMap);
    }
    // Common factor: gcd of dehomogenizations times the common power of y.
    let y_common = (big_d - f.deg()).min(big_d - g.deg());
    let h = f.gcd(&g).primitive_part();
    let d = big_d - y_common - h.deg();
    let f = f.div_exact(&h).expect("gcd divides");
    let g = g.div_exact(&h).expect("gcd divides");
    match d {
        0 => return Err(Error::DegenerateMap),
        1 => return Err(Error::DegreeTooSmall(1)),
        _ => {}
    }
    if resultant_formal(&f, d, &g, d).is_zero() {
        return Err(Error::DegenerateMap);
    }
    let c = f.content().gcd(&g.content());
    let (mut f, mut g) = (f.div_scalar_exact(&c), g.div_scalar_exact(&c));
    let lead = (0..=d).rev().map(|i| f.coeff(i)).find(|c| !c.is_zero());
    if lead.is_some_and(|c| c.is_negative()) {
        f = -f;
        g = -g;
    }
    Ok(RationalMapP1 { f: BinaryForm::new(d, f), g: BinaryForm::new(d, g) })
}

impl RationalMapP1 {
    pub fn from_forms(f: &[i64], g: &[i64]) -> Result<Self> {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        normalize_map(&c(f), &c(g))
    }

    /// The map `z -> p(z)` for a polynomial `p` of degree at least 2.
    pub fn polynomial(p: &UniPoly) -> Result<Self> {
        Self::from_ratfun(p, &UniPoly::one())
    }

    /// The map `z -> num(z)/den(z)`, homogenized to degree
    /// `max(deg num, deg den)`.
    pub fn from_ratfun(num: &UniPoly, den: &UniPoly) -> Result<Self> {
        let d = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        let pad = |p: &UniPoly| (0..=d.max(2)).map(|i| p.coeff(i)).collect::<Vec<_>>();
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        normalize_map(&pad(num), &pad(den))
    }

    /// Parses `"z^2+1"`, `"(z^2-1)/(z+3)"` or `"[x^2+y^2 : y^2]"`.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(parts) = split_bracketed(s) {
            if parts.len() != 2 {
                return Err(Error::Parse("a map on P^1 needs exactly two forms".into()));
            }
            let (fx, gx) = (parse_expr(parts[0])?, parse_expr(parts[1])?);
            let mut names = fx.variables();
            names.extend(gx.variables());
            let names: Vec<String> = if names.iter().all(|n| n == "x" || n == "y") {
                vec!["x".into(), "y".into()]
            } else if names.len() == 2 {
                names.into_iter().collect()
            } else {
                return Err(Error::Parse("forms must be in two variables".into()));
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let fp = MultiPoly::parse(parts[0], &refs)?;
            let gp = MultiPoly::parse(parts[1], &refs)?;
            return Self::from_multipoly_forms(&fp, &gp);
        }
        let e = parse_expr(s)?;
        let v = single_variable(&e)?;
        let r: RatFun = e.eval(&|_| Ok(RatFun { num: UniPoly::x(), den: UniPoly::one() }))?;
        if v.is_none() {
            return Err(Error::DegreeTooSmall(0));
        }
        Self::from_ratfun(&r.num, &r.den)
    }

    fn from_multipoly_forms(f: &MultiPoly, g: &MultiPoly) -> Result<Self> {
        if !f.is_homogeneous() || !g.is_homogeneous() {
            return Err(Error::Parse("forms must be homogeneous".into()));
        }
        let df = f.total_degree();
        let dg = g.total_degree();
        let d = match (df, dg) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Parse(format!("forms have different degrees {a} and {b}")))
            }
            (Some(a), _) | (None, Some(a)) => a as usize,
            (None, None) => return Err(Error::InvalidArgument("both forms are zero".into())),
        };
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        let coeffs = |p: &MultiPoly| (0..=d).map(|i| p.coeff(&[i as u32, (d - i) as u32])).collect::<Vec<_>>();
        normalize_map(&coeffs(f), &coeffs(g))
    }

    pub fn degree(&self) -> usize {
        self.f.degree
    }

    pub fn f(&self) -> &BinaryForm {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn is_polynomial(&self) -> bool {
        self.g.poly.is_constant()
    }

    /// `Res(F, G)` of the homogeneous forms.
    pub fn resultant(&self) -> BigInt {
        resultant_formal(&self.f.poly, self.degree(), &self.g.poly, self.degree())
    }

    pub fn evaluate(&self, p: &ProjPointQ) -> ProjPointQ {
        let x = self.f.eval(p.a(), p.b());
        let y = self.g.eval(p.a(), p.b());
        ProjPointQ::new(x, y).expect("coprime forms do not vanish together")
    }

    /// Canonical `[F : G]` rendering.
    pub fn to_forms_string(&self) -> String {
        format!("[{} : {}]", self.f, self.g)
    }

    /// `F(x,1)/G(x,1)` as a string in the variable `z`.
    pub fn to_ratfun_string(&self) -> String {
        let num = self.f.poly.to_string_var("z");
        if self.g.poly.is_one() {
            num
        } else {
            format!("({num})/({})", self.g.poly.to_string_var("z"))
        }
    }
}

impl fmt::Display for RationalMapP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_forms_string())
    }
}

fn check_level(d: usize, n: usize, budget: &Budgets) -> Result<()> {
    let mut max_level = 0;
    let mut acc = 1usize;
    while let Some(next) = acc.checked_mul(d).filter(|&v| v <= budget.degree_budget) {
        acc = next;
        max_level += 1;
    }
    if n > max_level {
        return Err(Error::Budget { requested: n, max_level });
    }
    Ok(())
}

/// `(F_n, G_n)` with `F_{k+1} = F(F_k, G_k)` and `G_{k+1} = G(F_k, G_k)`.
/// No content is removed.
pub fn iterate_forms(map: &RationalMapP1, n: usize, budget: &Budgets) -> Result<(BinaryForm, BinaryForm)> {
    if n == 0 {
        return Err(Error::InvalidArgument("iteration count must be positive".into()));
    }
    let d = map.degree();
    check_level(d, n, budget)?;
    let mut fk = map.f.clone();
    let mut gk = map.g.clone();
    for _ in 1..n {
        let next_deg = fk.degree * d;
        let (nf, ng) = compose_forms(map, &fk.poly, &gk.poly);
        fk = BinaryForm::new(next_deg, nf);
        gk = BinaryForm::new(next_deg, ng);
    }
    Ok((fk, gk))
}

/// `(F(A, B), G(A, B))` dehomogenized, for dehomogenized forms `A, B` of a
/// common degree.
fn compose_forms(map: &RationalMapP1, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let d = map.degree();
    let mut bpow = vec![UniPoly::one()];
    for i in 1..=d {
        let next = &bpow[i - 1] * b;
        bpow.push(next);
    }
    let horner = |form: &BinaryForm| {
        let mut acc = UniPoly::constant(form.coeff(d));
        for i in (0..d).rev() {
            acc = &(&acc * a) + &bpow[d - i].scale(&form.coeff(i));
        }
        acc
    };
    (horner(&map.f), horner(&map.g))
}

/// The normalized map `phi^k`.
pub fn iterate_map(map: &RationalMapP1, k: usize, budget: &Budgets) -> Result<RationalMapP1> {
    let (f, g) = iterate_forms(map, k, budget)?;
    normalize_map(&f.coeffs(), &g.coeffs())
}

/// Critical-point data from the Wronskian `W = F_x G_y - F_y G_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wronskian {
    /// `W`, a form of degree `2d - 2`.
    pub form: BinaryForm,
    /// `W / d`, the homogenized `F'(x)G(x) - F(x)G'(x)`; it vanishes
    /// identically modulo `p` exactly when the reduction is inseparable.
    pub reduced: BinaryForm,
    pub infinity_critical: bool,
}

impl Wronskian {
    pub fn content(&self) -> BigInt {
        self.form.content()
    }

    /// Squarefree primitive polynomial whose roots are the finite critical
    /// points.
    pub fn finite_critical_divisor(&self) -> UniPoly {
        if self.reduced.poly.is_constant() {
            UniPoly::one()
        } else {
            self.reduced.poly.squarefree_part()
        }
    }
}

pub fn critical_wronskian(map: &RationalMapP1) -> Result<Wronskian> {
    let d = map.degree();
    let (f, g) = (&map.f.poly, &map.g.poly);
    // Euler's identity gives F_y(x,1) = d F(x,1) - x F_x(x,1), so that
    // W(x,1) = d (F' G - F G').
    let reduced = &(&f.derivative() * g) - &(f * &g.derivative());
    if reduced.is_zero() {
        return Err(Error::InseparableMap);
    }
    let form = BinaryForm::new(2 * d - 2, reduced.scale(&BigInt::from(d)));
    let reduced = BinaryForm::new(2 * d - 2, reduced);
    let infinity_critical = reduced.y_multiplicity() > 0;
    Ok(Wronskian { form, reduced, infinity_critical })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPrimeClasses {
    pub resultant: BigInt,
    /// Primes dividing `Res(F, G)`.
    pub bad_reduction: Vec<BigUint>,
    /// Unfactored part of `|Res(F, G)|`, if factoring ran out of budget.
    pub bad_unknown: Option<BigUint>,
    /// Primes modulo which the reduced map is inseparable.
    pub inseparable_reduction: Vec<BigUint>,
    pub inseparable_unknown: Option<BigUint>,
    pub notes: Vec<(BigUint, String)>,
}

fn support(n: &BigInt, budget: &Budgets) -> Result<(Vec<BigUint>, Option<BigUint>)> {
    let fac: IntFactorization = factor_integer(n, budget)?;
    Ok((fac.primes().cloned().collect(), fac.unknown().cloned()))
}

pub fn reduction_bad_primes(map: &RationalMapP1, budget: &Budgets) -> Result<BadPrimeClasses> {
    let res = map.resultant();
    let (bad_reduction, bad_unknown) = support(&res, budget)?;
    let w = critical_wronskian(map)?;
    let (inseparable_reduction, inseparable_unknown) = support(&w.reduced.content(), budget)?;
    let mut notes = Vec::new();
    for p in &bad_reduction {
        notes.push((p.clone(), format!("{p} divides Res(F,G) = {res}")));
    }
    for p in &inseparable_reduction {
        notes.push((p.clone(), format!("{p} divides every coefficient of the Wronskian")));
    }
    notes.sort();
    Ok(BadPrimeClasses { resultant: res, bad_reduction, bad_unknown, inseparable_reduction, inseparable_unknown, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization_examples() {
        let m = normalize_map(&bi(&[2, 0, 2]), &bi(&[2, 0, 0])).unwrap();
        assert_eq!(m.to_string(), "[x^2 + y^2 : y^2]");
        // x^2 y / y^3 loses the common factor y.
        let m = normalize_map(&bi(&[0, 0, 1, 0]), &bi(&[1, 0, 0, 0])).unwrap();
        assert_eq!(m.to_string(), "[x^2 : y^2]");
        assert_eq!(normalize_map(&bi(&[0, 0, 1]), &bi(&[0, 0, 1])), Err(Error::DegenerateMap));
        assert_eq!(normalize_map(&bi(&[0, 1, 1]), &bi(&[0, 0, 1])), Err(Error::DegreeTooSmall(1)));
        let m = normalize_map(&bi(&[0, 0, -1]), &bi(&[1, 0, 0])).unwrap();
        assert_eq!(m.f().coeff(2), BigInt::from(1));
        assert_eq!(m.g().coeff(0), BigInt::from(-1));
    }

    #[test]
    fn parsing_maps() {
        let a = RationalMapP1::parse("z^2+1").unwrap();
        let b = RationalMapP1::parse("[x^2+y^2 : y^2]").unwrap();
        assert_eq!(a, b);
        let c = RationalMapP1::parse("(z^2-1)/(z+3)").unwrap();
        assert_eq!(c.to_string(), "[x^2 - y^2 : x*y + 3*y^2]");
        assert!(RationalMapP1::parse("z+1").is_err());
        assert!(RationalMapP1::parse("[x^2 : y^3]").is_err());
    }

    #[test]
    fn iteration_examples() {
        let b = Budgets::default();
        let m = RationalMapP1::parse("z^2+1").unwrap();
        let (f2, g2) = iterate_forms(&m, 2, &b).unwrap();
        assert_eq!(f2.to_string(), "x^4 + 2*x^2*y^2 + 2*y^4");
        assert_eq!(g2.to_string(), "y^4");
        let sq = RationalMapP1::parse("z^2").unwrap();
        let (f3, g3) = iterate_forms(&sq, 3, &b).unwrap();
        assert_eq!((f3.to_string().as_str(), g3.to_string().as_str()), ("x^8", "y^8"));
        let m = RationalMapP1::parse("z^2-2").unwrap();
        assert_eq!(iterate_map(&m, 2, &b).unwrap().to_ratfun_string(), "z^4-4*z^2+2");
        assert_eq!(iterate_map(&m, 1, &b).unwrap(), m);
        assert_eq!(
            iterate_forms(&m, 13, &b),
            Err(Error::Budget { requested: 13, max_level: 12 })
        );
    }

    #[test]
    fn evaluation_examples() {
        let m = RationalMapP1::parse("z^2+1").unwrap();
        let orbit: Vec<String> = [0, 1, 2].iter().map(|&a| m.evaluate(&ProjPointQ::from_int(a)).to_string()).collect();
        assert_eq!(orbit, ["1", "2", "5"]);
        let sq = RationalMapP1::parse("z^2").unwrap();
        assert!(sq.evaluate(&ProjPointQ::infinity()).is_infinity());
    }

    #[test]
    fn wronskian_and_bad_primes() {
        let b = Budgets::default();
        for s in ["z^2", "z^2+1"] {
            let m = RationalMapP1::parse(s).unwrap();
            let w = critical_wronskian(&m).unwrap();
            assert_eq!(w.form.to_string(), "4*x*y");
            assert!(w.infinity_critical);
            let bad = reduction_bad_primes(&m, &b).unwrap();
            assert!(bad.bad_reduction.is_empty());
            assert_eq!(bad.inseparable_reduction, [BigUint::from(2u32)]);
        }
        let m = RationalMapP1::parse("z(z-3)").unwrap();
        let bad = reduction_bad_primes(&m, &b).unwrap();
        assert!(bad.bad_reduction.is_empty());
        assert!(bad.inseparable_reduction.is_empty());
        assert_eq!(critical_wronskian(&m).unwrap().form.to_string(), "4*x*y - 6*y^2");
    }
}

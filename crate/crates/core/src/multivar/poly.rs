use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::UniPoly;
use crate::parse::{parse_expr, ExprRing};

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with integer coefficients in a fixed number of
/// variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Default variable names: `x, y, z` up to three variables, else `x0, x1, ...`.
pub fn default_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(BigInt::one(), e)
    }

    pub fn term(c: BigInt, exps: Vec<u32>) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Monomial(exps), c);
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        coeffs
            .iter()
            .enumerate()
            .fold(Self::zero(n), |acc, (i, &c)| &acc + &Self::var(n, i).scale(&BigInt::from(c)))
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Monomial::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|e| e == first),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    fn check_arity(&self, o: &MultiPoly) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::ArityMismatch { left: self.nvars, right: o.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(o)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images share one arity.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch { left: self.nvars, right: images.len() });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::ArityMismatch { left: target, right: bad.nvars });
        }
        // Cache powers per variable.
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                out.add_term(m2, c * BigInt::from(e));
            }
        }
        out
    }

    /// Quotient `q` with `self = b*q`, or `None` if `b` does not divide
    /// `self` over `Z`.
    pub fn exact_divide(&self, b: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_arity(b)?;
        let (lm, lc) = match b.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::InvalidArgument("division by the zero polynomial".into())),
        };
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = r.leading_term() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let (qc, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return Ok(None);
            }
            let t = Self::term(qc, m.div(&lm).0);
            r = &r - &(&t * b);
            q = &q + &t;
        }
        Ok(Some(q))
    }

    /// Non-negative gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.nvars);
        };
        it.fold(first.clone(), |acc, m| Monomial(acc.0.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_term().unwrap().1.is_negative() {
            c = -c;
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a / &c)).collect(),
        }
    }

    /// Divides every term by the monomial `m` (which must divide them all).
    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.div(m), a.clone())).collect(),
        }
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a / c)).collect(),
        }
    }

    /// The polynomial as a univariate one in variable `i`, if no other
    /// variable occurs.
    pub fn to_unipoly(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e != 0) {
                return None;
            }
            let e = m.0[i] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_unipoly(p: &UniPoly, nvars: usize, i: usize) -> MultiPoly {
        let mut out = Self::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn determinant(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("determinant of an empty matrix".into()));
        }
        Ok(Self::laplace(m, &(0..n).collect::<Vec<_>>(), 0))
    }

    fn laplace(m: &[Vec<MultiPoly>], cols: &[usize], row: usize) -> MultiPoly {
        if cols.len() == 1 {
            return m[row][cols[0]].clone();
        }
        let mut acc = Self::zero(m[row][cols[0]].nvars);
        for (k, &c) in cols.iter().enumerate() {
            if m[row][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
            let t = &m[row][c] * &Self::laplace(m, &rest, row + 1);
            acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    /// Canonical rendering such as `x^2*y - 2*z^3`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s += if neg { " - " } else { " + " };
            }
            let mag = c.magnitude();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(format!("{mag}"));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{e}", names[i])),
                }
            }
            s += &factors.join("*");
        }
        s
    }

    /// Parses with the given variable names; the arity is `names.len()`.
    /// Division is only allowed by exact divisors.
    pub fn parse(s: &str, names: &[&str]) -> Result<MultiPoly> {
        let e = parse_expr(s)?;
        let n = names.len();
        e.eval(&|v: &str| {
            names
                .iter()
                .position(|&w| w == v)
                .map(|i| MultiPoly::var(n, i))
                .ok_or_else(|| Error::Parse(format!("unknown variable '{v}'")))
        })
        .map(|p: MultiPoly| if p.nvars == n { p } else { p.with_arity(n) })
    }

    fn with_arity(self, n: usize) -> MultiPoly {
        // Constants built by `from_int` carry arity 0.
        debug_assert!(self.nvars == 0);
        let c = self.terms.values().next().cloned().unwrap_or_default();
        Self::constant(n, c)
    }
}

impl ExprRing for MultiPoly {
    fn from_int(n: &BigInt) -> Self {
        MultiPoly::constant(0, n.clone())
    }
    fn add(self, rhs: Self) -> Self {
        let (a, b) = unify(self, rhs);
        &a + &b
    }
    fn sub(self, rhs: Self) -> Self {
        let (a, b) = unify(self, rhs);
        &a - &b
    }
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = unify(self, rhs);
        &a * &b
    }
    fn div(self, rhs: Self) -> Result<Self> {
        let (a, b) = unify(self, rhs);
        if b.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        a.exact_divide(&b)?
            .ok_or_else(|| Error::Parse("division is not exact in the polynomial ring".into()))
    }
    fn neg(self) -> Self {
        -&self
    }
}

/// Lifts arity-0 constants to the arity of the other operand.
fn unify(a: MultiPoly, b: MultiPoly) -> (MultiPoly, MultiPoly) {
    match (a.nvars, b.nvars) {
        (0, n) if n > 0 => (a.with_arity(n), b),
        (n, 0) if n > 0 => (a, b.with_arity(n)),
        _ => (a, b),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.nvars)
    }
}

impl core::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.try_add(o).expect("arity mismatch")
    }
}

impl core::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.try_add(&-o).expect("arity mismatch")
    }
}

impl core::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.try_mul(o).expect("arity mismatch")
    }
}

impl core::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p3(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p3("x-y") * &p3("x+y"), p3("x^2-y^2"));
        assert_eq!(p3("x^2-y^2").exact_divide(&p3("x-y")).unwrap(), Some(p3("x+y")));
        assert_eq!(p3("x^2+y").exact_divide(&p3("x-y")).unwrap(), None);
        let s = p3("x+y").substitute(&[p3("x^2"), p3("y^2"), p3("z")]).unwrap();
        assert_eq!(s, p3("x^2+y^2"));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p3("-2*z^3 + y*x^2").to_string(), "x^2*y - 2*z^3");
        assert_eq!(p3("1 - x").to_string(), "-x + 1");
        assert_eq!(p3("0").to_string(), "0");
        assert_eq!(p3("3x*y*z").to_string(), "3*x*y*z");
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(3, 0);
        assert_eq!(a.try_mul(&b), Err(Error::ArityMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn determinant_3x3() {
        let m: Vec<Vec<MultiPoly>> = [[1, 2, 3], [0, 1, 4], [5, 6, 0]]
            .iter()
            .map(|r| r.iter().map(|&c| MultiPoly::constant(1, BigInt::from(c))).collect())
            .collect();
        assert_eq!(MultiPoly::determinant(&m).unwrap(), MultiPoly::constant(1, BigInt::from(1)));
    }
}

//! ASCII input syntax for polynomials, rational functions, maps and points.
//!
//! Expressions use `+ - * / ^`, parentheses, integer literals and
//! identifiers. `*` may be omitted between juxtaposed factors (`2x^2`,
//! `3(x+1)`). Exponents are non-negative integer literals.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::UniPoly;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Target of expression evaluation.
pub trait ExprRing: Sized {
    fn from_int(n: &BigInt) -> Self;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn div(self, rhs: Self) -> Result<Self>;
    fn neg(self) -> Self;

    fn pow(self, e: u32) -> Self
    where
        Self: Clone,
    {
        let mut acc = Self::from_int(&BigInt::one());
        let mut base = self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base.clone());
            }
            e >>= 1;
            if e > 0 {
                base = base.clone().mul(base);
            }
        }
        acc
    }
}

impl Expr {
    /// Evaluates with variables resolved by `var`.
    pub fn eval<R: ExprRing + Clone>(&self, var: &dyn Fn(&str) -> Result<R>) -> Result<R> {
        Ok(match self {
            Expr::Num(n) => R::from_int(n),
            Expr::Var(v) => var(v)?,
            Expr::Neg(a) => a.eval(var)?.neg(),
            Expr::Add(a, b) => a.eval(var)?.add(b.eval(var)?),
            Expr::Sub(a, b) => a.eval(var)?.sub(b.eval(var)?),
            Expr::Mul(a, b) => a.eval(var)?.mul(b.eval(var)?),
            Expr::Div(a, b) => a.eval(var)?.div(b.eval(var)?)?,
            Expr::Pow(a, e) => a.eval(var)?.pow(*e),
        })
    }

    /// Names of all variables, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().map_err(|_| Error::Parse(format!("bad integer {lit}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n
                        .to_u32()
                        .filter(|&e| e <= MAX_EXPONENT)
                        .ok_or_else(|| Error::Parse(format!("exponent {n} out of range")))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(Error::Parse("expected a non-negative integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(e)
}

/// Univariate rational function over `Q` as a reduced quotient of integer
/// polynomials with positive leading denominator coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RatFun {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        if den.lc().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RatFun { num, den })
    }
}

impl ExprRing for RatFun {
    fn from_int(n: &BigInt) -> Self {
        RatFun { num: UniPoly::constant(n.clone()), den: UniPoly::one() }
    }
    fn add(self, rhs: Self) -> Self {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::new(n, &self.den * &rhs.den).expect("nonzero denominators")
    }
    fn sub(self, rhs: Self) -> Self {
        self.add(rhs.neg())
    }
    fn mul(self, rhs: Self) -> Self {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
    fn div(self, rhs: Self) -> Result<Self> {
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
    fn neg(self) -> Self {
        RatFun { num: -self.num, den: self.den }
    }
}

pub fn single_variable(e: &Expr) -> Result<Option<String>> {
    let vars = e.variables();
    if vars.len() > 1 {
        let names: Vec<String> = vars.into_iter().collect();
        return Err(Error::Parse(format!("expected one variable, found {}", names.join(", "))));
    }
    Ok(vars.into_iter().next())
}

/// Parses a rational function in at most one variable.
pub fn parse_ratfun(s: &str) -> Result<RatFun> {
    let e = parse_expr(s)?;
    single_variable(&e)?;
    e.eval(&|_| Ok(RatFun { num: UniPoly::x(), den: UniPoly::one() }))
}

/// Parses a polynomial with integer coefficients in at most one variable.
pub fn parse_unipoly(s: &str) -> Result<UniPoly> {
    let r = parse_ratfun(s)?;
    if !r.den.is_constant() {
        return Err(Error::Parse(format!("'{s}' is not a polynomial")));
    }
    let c = r.den.coeff(0);
    r.num
        .coeffs()
        .iter()
        .all(|a| (a % &c).is_zero())
        .then(|| r.num.div_scalar_exact(&c))
        .ok_or_else(|| Error::Parse(format!("'{s}' has non-integral coefficients")))
}

/// A point of `P^1(Q)` as raw coordinates `(a, b)`; `inf` gives `(1, 0)`.
pub fn parse_point(s: &str) -> Result<(BigInt, BigInt)> {
    let t = s.trim();
    if matches!(t, "inf" | "infinity" | "Inf" | "oo" | "∞") {
        return Ok((BigInt::one(), BigInt::zero()));
    }
    let r = parse_ratfun(t)?;
    if !r.num.is_constant() && !r.num.is_zero() || !r.den.is_constant() {
        return Err(Error::Parse(format!("'{t}' is not a rational number")));
    }
    Ok((r.num.coeff(0), r.den.coeff(0)))
}

/// Splits `"[A : B : ...]"` into its coordinate strings; `None` if the input
/// is not bracketed.
pub fn split_bracketed(s: &str) -> Option<Vec<&str>> {
    let t = s.trim();
    let inner = t.strip_prefix('[')?.strip_suffix(']')?;
    Some(inner.split(':').map(str::trim).collect())
}

/// Parses a comma- or space-separated list of integers.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer '{t}'"))))
        .collect()
}

impl core::fmt::Display for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in one variable with integer coefficients, lowest degree
/// first. Trailing zero coefficients are never stored, so the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

/// Products with both operands at least this long go through Kronecker
/// substitution into a single big-integer multiplication.
const KRONECKER_THRESHOLD: usize = 24;

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `b*x - a`, the polynomial vanishing at `a/b`.
    pub fn vanishing_at(a: &BigInt, b: &BigInt) -> Self {
        Self::new(vec![-a, b.clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        debug_assert!(!c.is_zero());
        if c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    /// Largest `k` with `x^k` dividing the polynomial.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `sum c_i a^i b^(n-i)`: the binary form of formal degree `n` attached
    /// to this polynomial, evaluated at `(a, b)`.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt, n: usize) -> BigInt {
        debug_assert!(self.coeffs.len() <= n + 1);
        let mut bpows = Vec::with_capacity(n + 1);
        bpows.push(BigInt::one());
        for k in 1..=n {
            let next = &bpows[k - 1] * b;
            bpows.push(next);
        }
        // Horner in a with explicit powers of b.
        let mut acc = BigInt::zero();
        for i in (0..=n).rev() {
            acc = acc * a + self.coeff(i) * &bpows[n - i];
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &BigInt) -> Self {
        // Taylor shift by repeated synthetic division.
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `self(c*x)`.
    pub fn scale_var(&self, c: &BigInt) -> Self {
        let mut p = BigInt::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &p);
            p *= c;
        }
        Self::new(v)
    }

    /// `x^n * self(1/x)` for a formal degree `n >= deg`.
    pub fn reverse(&self, n: usize) -> Self {
        debug_assert!(self.coeffs.len() <= n + 1);
        let mut v = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(v)
    }

    /// Pseudo-division: `lc(d)^(deg self - deg d + 1) * self = q*d + r`.
    pub fn pseudo_div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "pseudo-division by zero polynomial");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let lc = d.lc();
        let delta = self.deg() - dd;
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); delta + 1];
        for k in (0..=delta).rev() {
            let top = r[k + dd].clone();
            for c in q.iter_mut() {
                *c *= &lc;
            }
            for c in r.iter_mut() {
                *c *= &lc;
            }
            q[k] += &top;
            if !top.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &top * dc;
                }
            }
            r.truncate(k + dd);
        }
        (Self::new(q), Self::new(r))
    }

    /// Division over `Z`; `None` unless `d` divides `self` exactly.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let delta = self.deg() - dd;
        let mut q = vec![BigInt::zero(); delta + 1];
        for k in (0..=delta).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Primitive gcd with positive leading coefficient (times the gcd of
    /// contents).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.pseudo_div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    fn normalize_sign(&self) -> UniPoly {
        if self.lc().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn squarefree_part(&self) -> UniPoly {
        assert!(!self.is_zero(), "squarefree part of zero");
        if self.is_constant() {
            return Self::one();
        }
        let g = self.gcd(&self.derivative()).primitive_part();
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides polynomial")
            .primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's squarefree decomposition of the primitive part: pairs
    /// `(a_i, i)` with `pp(self) = prod a_i^i`, each `a_i` primitive,
    /// squarefree and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.primitive_part();
        if f.is_constant() {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp).primitive_part();
        let mut b = f.div_exact(&a0).expect("exact");
        let c = fp.div_exact(&a0).expect("exact");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1u32;
        while !b.is_constant() {
            let a = b.gcd(&d).primitive_part();
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("exact");
            let c = d.div_exact(&a).expect("exact");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn max_abs_coeff(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_default()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Canonical ASCII rendering with the given variable name.
    pub fn to_string_var(&self, var: &str) -> String {
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.magnitude();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            if i == 0 {
                s += &alloc::format!("{mag}");
            } else {
                if !mag.is_one() {
                    s += &alloc::format!("{mag}*");
                }
                s += var;
                if i > 1 {
                    s += &alloc::format!("^{i}");
                }
            }
        }
        s
    }

    fn mul_naive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// Kronecker substitution: pack both operands at `2^(32*w)`, multiply
    /// once, and unpack with a bias that makes every slot non-negative.
    fn mul_kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let ba = a.iter().map(|c| c.bits()).max().unwrap_or(0);
        let bb = b.iter().map(|c| c.bits()).max().unwrap_or(0);
        let terms = a.len().min(b.len()) as u64;
        let need = ba + bb + (64 - terms.leading_zeros() as u64) + 2;
        let w = need.div_ceil(32) as usize;
        let slot_bits = 32 * w;
        let pack = |v: &[BigInt]| {
            let mut acc = BigInt::zero();
            for c in v.iter().rev() {
                acc = (acc << slot_bits) + c;
            }
            acc
        };
        let prod = pack(a) * pack(b);
        let len = a.len() + b.len() - 1;
        // bias = sum_i 2^(slot_bits-1) * 2^(slot_bits*i)
        let mut bias_digits = vec![0u32; w * len];
        for i in 0..len {
            bias_digits[i * w + w - 1] = 0x8000_0000;
        }
        let bias = BigInt::from_biguint(Sign::Plus, BigUint::new(bias_digits));
        let biased = (prod + &bias).to_biguint().expect("bias keeps product non-negative");
        let digits = biased.to_u32_digits();
        let half = BigInt::one() << (slot_bits - 1);
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let lo = (i * w).min(digits.len());
            let hi = ((i + 1) * w).min(digits.len());
            let slot = BigInt::from_biguint(Sign::Plus, BigUint::new(digits[lo..hi].to_vec()));
            out.push(slot - &half);
        }
        out
    }

    fn mul_impl(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        if a.len().min(b.len()) >= KRONECKER_THRESHOLD {
            Self::new(Self::mul_kronecker(a, b))
        } else {
            Self::new(Self::mul_naive(a, b))
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl core::str::FromStr for UniPoly {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_unipoly(s)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

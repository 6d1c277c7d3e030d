//! Polynomials over prime fields `F_p`, with factorization into monic
//! irreducibles (squarefree split, distinct-degree, Cantor-Zassenhaus).
//!
//! Coefficient vectors are lowest degree first with no trailing zeros,
//! mirroring [`UniPoly`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::UniPoly;

/// Arithmetic in a prime field.
pub trait PrimeField: Clone + Sync {
    type E: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn modulus(&self) -> BigUint;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn reduce_int(&self, a: &BigInt) -> Self::E;
    fn reduce_u64(&self, a: u64) -> Self::E;
    /// Least non-negative representative.
    fn to_bigint(&self, a: &Self::E) -> BigInt;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::E;
}

/// `F_p` for `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallPrime(pub u64);

impl PrimeField for SmallPrime {
    type E = u64;

    fn modulus(&self) -> BigUint {
        BigUint::from(self.0)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        let e = BigInt::from(*a).extended_gcd(&BigInt::from(self.0));
        assert!(e.gcd.is_one(), "inverse of zero mod p");
        e.x.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }
    fn reduce_int(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }
    fn reduce_u64(&self, a: u64) -> u64 {
        a % self.0
    }
    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.0)
    }
}

/// `F_p` for an arbitrary prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigPrime(pub BigUint);

impl PrimeField for BigPrime {
    type E = BigUint;

    fn modulus(&self) -> BigUint {
        self.0.clone()
    }
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one() % &self.0
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.0 {
            s - &self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.0 - b
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.0
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.0 - a
        }
    }
    fn inv(&self, a: &BigUint) -> BigUint {
        let m = BigInt::from(self.0.clone());
        let e = BigInt::from(a.clone()).extended_gcd(&m);
        assert!(e.gcd.is_one(), "inverse of zero mod p");
        e.x.mod_floor(&m).to_biguint().unwrap()
    }
    fn reduce_int(&self, a: &BigInt) -> BigUint {
        a.mod_floor(&BigInt::from(self.0.clone())).to_biguint().unwrap()
    }
    fn reduce_u64(&self, a: u64) -> BigUint {
        BigUint::from(a) % &self.0
    }
    fn to_bigint(&self, a: &BigUint) -> BigInt {
        BigInt::from(a.clone())
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> BigUint {
        rng.gen_biguint_below(&self.0)
    }
}

/// Polynomial operations over a fixed prime field.
#[derive(Debug, Clone)]
pub struct PolyRing<F: PrimeField> {
    pub field: F,
}

pub type Poly<F> = Vec<<F as PrimeField>::E>;

impl<F: PrimeField> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn trim(&self, mut a: Poly<F>) -> Poly<F> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn reduce(&self, f: &UniPoly) -> Poly<F> {
        self.trim(f.coeffs().iter().map(|c| self.field.reduce_int(c)).collect())
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn lift(&self, a: &Poly<F>) -> UniPoly {
        UniPoly::new(a.iter().map(|c| self.field.to_bigint(c)).collect())
    }

    pub fn x(&self) -> Poly<F> {
        vec![self.field.zero(), self.field.one()]
    }

    pub fn one(&self) -> Poly<F> {
        vec![self.field.one()]
    }

    pub fn degree(a: &Poly<F>) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        self.trim(
            (0..n)
                .map(|i| self.field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        self.trim(
            (0..n)
                .map(|i| self.field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.field.mul(x, y);
                out[i + j] = self.field.add(&out[i + j], &t);
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &Poly<F>, c: &F::E) -> Poly<F> {
        self.trim(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn monic(&self, a: &Poly<F>) -> Poly<F> {
        match a.last() {
            None => Vec::new(),
            Some(lc) => {
                let inv = self.field.inv(lc);
                self.scale(a, &inv)
            }
        }
    }

    pub fn div_rem(&self, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.field.inv(b.last().unwrap());
        let db = b.len() - 1;
        let mut r = a.clone();
        let mut q = vec![self.field.zero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.field.mul(&r[k + db], &inv);
            if !self.field.is_zero(&c) {
                for (j, bc) in b.iter().enumerate() {
                    let t = self.field.mul(&c, bc);
                    r[k + j] = self.field.sub(&r[k + j], &t);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.div_rem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(lc);
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    pub fn derivative(&self, a: &Poly<F>) -> Poly<F> {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(c, &self.field.reduce_u64(i as u64)))
                .collect(),
        )
    }

    pub fn pow_mod(&self, base: &Poly<F>, e: &BigUint, m: &Poly<F>) -> Poly<F> {
        let mut result = self.one();
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
        }
        if bits == 0 {
            b = self.one();
            return self.rem(&b, m);
        }
        result
    }

    pub fn is_squarefree(&self, a: &Poly<F>) -> bool {
        !a.is_empty() && Self::degree(&self.gcd(a, &self.derivative(a))) == Some(0)
    }

    fn pth_root(&self, a: &Poly<F>, p: usize) -> Poly<F> {
        // Over F_p the Frobenius is the identity on coefficients.
        self.trim(a.iter().step_by(p).cloned().collect())
    }

    /// Squarefree decomposition of a nonzero polynomial: monic squarefree
    /// `a_i` with multiplicities.
    pub fn squarefree_decomposition(&self, f: &Poly<F>) -> Vec<(Poly<F>, u32)> {
        let mut out = Vec::new();
        self.sqf_rec(&self.monic(f), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_rec(&self, f: &Poly<F>, mult: u32, out: &mut Vec<(Poly<F>, u32)>) {
        if f.len() <= 1 {
            return;
        }
        let fp = self.derivative(f);
        let mut c = self.gcd(f, &fp);
        let mut w = self.div_rem(f, &c).0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let fac = self.div_rem(&w, &y).0;
            if fac.len() > 1 {
                out.push((self.monic(&fac), i * mult));
            }
            w = y;
            c = self.div_rem(&c, &w).0;
            i += 1;
        }
        if c.len() > 1 {
            let p = self.field.modulus().to_usize().expect("p-th power only for small p");
            let root = self.pth_root(&c, p);
            self.sqf_rec(&self.monic(&root), mult * p as u32, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
        let q = self.field.modulus();
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = self.x();
        let mut h = self.rem(&x, &f);
        let mut i = 0usize;
        while f.len() > 1 && 2 * (i + 1) < f.len() {
            i += 1;
            h = self.pow_mod(&h, &q, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((self.monic(&f), d));
        }
        out
    }

    /// Splits a monic squarefree product of degree-`d` irreducibles.
    pub fn equal_degree(&self, f: &Poly<F>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let q = self.field.modulus();
        let two = BigUint::from(2u32);
        loop {
            let a: Poly<F> =
                self.trim((0..n).map(|_| self.field.random(rng)).collect());
            if a.len() <= 1 {
                continue;
            }
            let b = if q == two {
                // Trace to F_2: a + a^2 + ... + a^(2^(d-1)).
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = self.rem(&self.mul(&t, &t), f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                let e = (q.pow(d as u32) - 1u32) / 2u32;
                let r = self.pow_mod(&a, &e, f);
                self.sub(&r, &self.one())
            };
            let g = self.gcd(&b, f);
            let dg = g.len() - 1;
            if dg > 0 && dg < n {
                let h = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients). The leading coefficient is dropped.
    pub fn factor(&self, f: &Poly<F>) -> Vec<(Poly<F>, u32)>
    where
        F::E: Ord,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut out = Vec::new();
        for (s, m) in self.squarefree_decomposition(f) {
            for (g, d) in self.distinct_degree(&s) {
                for h in self.equal_degree(&g, d, &mut rng) {
                    out.push((h, m));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let r = PolyRing::new(SmallPrime(5));
        // x^4 + 2x^2 + 2 mod 5
        let f = r.reduce(&UniPoly::from_i64s(&[2, 0, 2, 0, 1]));
        let fac = r.factor(&f);
        let prod = fac.iter().fold(r.one(), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| r.mul(&a, g))
        });
        assert_eq!(prod, f);
        for (g, _) in &fac {
            assert!(r.is_squarefree(g));
        }
    }

    #[test]
    fn factor_char_two_with_pth_powers() {
        let r = PolyRing::new(SmallPrime(2));
        // (x+1)^4 * (x^2+x+1)
        let f = r.mul(
            &r.reduce(&UniPoly::from_i64s(&[1, 1]).pow(4)),
            &r.reduce(&UniPoly::from_i64s(&[1, 1, 1])),
        );
        let fac = r.factor(&f);
        assert_eq!(fac, vec![(vec![1, 1], 4), (vec![1, 1, 1], 1)]);
    }

    #[test]
    fn big_prime_field_agrees_with_small() {
        let f = UniPoly::from_i64s(&[-1, 0, 0, 0, 0, 0, 1]);
        let small = PolyRing::new(SmallPrime(13));
        let big = PolyRing::new(BigPrime(BigUint::from(13u32)));
        let a: Vec<Vec<u64>> = small.factor(&small.reduce(&f)).into_iter().map(|(g, _)| g).collect();
        let b: Vec<Vec<u64>> = big
            .factor(&big.reduce(&f))
            .into_iter()
            .map(|(g, _)| g.iter().map(|c| c.to_u64().unwrap()).collect())
            .collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
    }
}

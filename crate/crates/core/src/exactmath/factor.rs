//! Factorization over `Z[x]` by the Zassenhaus scheme: squarefree
//! decomposition, factorization modulo a good prime, Hensel lifting along a
//! balanced factor tree and bounded recombination of lifted factors.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integer::small_primes;
use super::modp::{PolyRing, PrimeField, SmallPrime};
use super::poly::UniPoly;
use crate::budget::Budgets;
use crate::error::{Error, Result};

/// Primes tried when looking for a prime of good reduction.
const PRIME_SEARCH_BOUND: u64 = 20_000;
/// Good primes whose factor degrees are intersected before choosing one.
const PATTERN_PRIMES: usize = 5;
/// Degree patterns kept as irreducibility evidence.
const EVIDENCE_PRIMES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactor {
    /// Primitive with positive leading coefficient.
    pub poly: UniPoly,
    pub exponent: u32,
    /// Proven irreducible by exhaustive recombination (or degree one). False
    /// means the factor was left unsplit because the budget ran out.
    pub irreducible: bool,
    /// Sorted factor degrees of `poly` modulo a few primes of good reduction.
    pub degree_patterns: Vec<(u64, Vec<usize>)>,
}

impl PolyFactor {
    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    /// True when the recorded degree patterns alone rule out every proper
    /// split over `Q`.
    pub fn patterns_rule_out_splitting(&self) -> bool {
        patterns_exclude_split(self.degree(), self.degree_patterns.iter().map(|(_, d)| d.as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactorization {
    /// Signed content, so that `unit * prod poly^exponent` is the input.
    pub unit: BigInt,
    pub factors: Vec<PolyFactor>,
    pub complete: bool,
}

impl PolyFactorization {
    pub fn product(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, f| &acc * &f.poly.pow(f.exponent))
    }
}

/// Factors `p` into irreducibles over `Z`.
pub fn factor_poly(p: &UniPoly, budget: &Budgets) -> Result<PolyFactorization> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("factorization of the zero polynomial".into()));
    }
    let f = p.primitive_part();
    let unit = p.lc() / f.lc();
    let mut factors = Vec::new();
    let mut complete = true;
    for (a, e) in f.squarefree_decomposition() {
        for (g, irreducible) in factor_squarefree(&a, budget) {
            complete &= irreducible;
            let degree_patterns = degree_patterns(&g, EVIDENCE_PRIMES);
            factors.push(PolyFactor { poly: g, exponent: e, irreducible, degree_patterns });
        }
    }
    factors.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.poly.coeffs().iter().rev().cmp(b.poly.coeffs().iter().rev()))
            .then_with(|| a.exponent.cmp(&b.exponent))
    });
    Ok(PolyFactorization { unit, factors, complete })
}

/// Factors a primitive squarefree polynomial with positive leading
/// coefficient. Returns factors paired with an irreducibility flag.
fn factor_squarefree(f: &UniPoly, budget: &Budgets) -> Vec<(UniPoly, bool)> {
    let n = f.deg();
    if n <= 1 {
        return vec![(f.clone(), true)];
    }
    if f.coeff(0).is_zero() {
        let mut out = vec![(UniPoly::x(), true)];
        out.extend(factor_squarefree(&f.div_exact(&UniPoly::x()).unwrap(), budget));
        return out;
    }
    let goods = good_primes(f, PATTERN_PRIMES);
    if goods.is_empty() {
        return vec![(f.clone(), false)];
    }
    let patterns: Vec<Vec<usize>> = goods.iter().map(|(_, fac)| fac.iter().map(|g| g.len() - 1).collect()).collect();
    if patterns_exclude_split(n, patterns.iter().map(|v| v.as_slice())) {
        return vec![(f.clone(), true)];
    }
    let (p, modp) = goods
        .into_iter()
        .min_by_key(|(_, fac)| fac.len())
        .expect("nonempty");
    let ring = PolyRing::new(SmallPrime(p));
    let (lifted, m) = hensel_lift_all(&ring, f, &modp);
    recombine(f, lifted, &m, budget.recombination_budget)
}

/// Up to `count` primes not dividing the leading coefficient for which `f`
/// stays squarefree, with the monic irreducible factors modulo each.
fn good_primes(f: &UniPoly, count: usize) -> Vec<(u64, Vec<Vec<u64>>)> {
    let mut out = Vec::new();
    for p in small_primes(PRIME_SEARCH_BOUND) {
        let ring = PolyRing::new(SmallPrime(p));
        let fp = ring.reduce(f);
        if fp.len() != f.deg() + 1 || !ring.is_squarefree(&fp) {
            continue;
        }
        let fac = ring.factor(&fp).into_iter().map(|(g, _)| g).collect();
        out.push((p, fac));
        if out.len() == count {
            break;
        }
    }
    out
}

fn degree_patterns(g: &UniPoly, count: usize) -> Vec<(u64, Vec<usize>)> {
    if g.deg() <= 1 {
        return Vec::new();
    }
    good_primes(g, count)
        .into_iter()
        .map(|(p, fac)| (p, fac.iter().map(|h| h.len() - 1).collect()))
        .collect()
}

/// True when no degree in `1..n` is a subset sum of every pattern.
fn patterns_exclude_split<'a>(n: usize, patterns: impl Iterator<Item = &'a [usize]>) -> bool {
    let mut possible = vec![true; n + 1];
    let mut any = false;
    for pat in patterns {
        any = true;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in pat {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (slot, s) in possible.iter_mut().zip(sums) {
            *slot &= s;
        }
    }
    any && (1..n).all(|k| !possible[k])
}

fn mod_pos(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn reduce_mod(f: &UniPoly, m: &BigInt) -> UniPoly {
    UniPoly::new(f.coeffs().iter().map(|c| mod_pos(c, m)).collect())
}

fn symmetric(f: &UniPoly, m: &BigInt) -> UniPoly {
    let half = m >> 1u32;
    UniPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = mod_pos(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division with remainder by a polynomial whose leading coefficient is a
/// unit modulo `m`; results reduced modulo `m`.
fn div_rem_mod(a: &UniPoly, b: &UniPoly, m: &BigInt) -> (UniPoly, UniPoly) {
    let db = b.deg();
    let mut r: Vec<BigInt> = a.coeffs().iter().map(|c| mod_pos(c, m)).collect();
    if r.len() <= db {
        return (UniPoly::zero(), UniPoly::new(r));
    }
    let inv = mod_inverse(&b.lc(), m);
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mod_pos(&(&r[k + db] * &inv), m);
        if !c.is_zero() {
            for (j, bc) in b.coeffs().iter().enumerate() {
                r[k + j] = mod_pos(&(&r[k + j] - &c * bc), m);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (UniPoly::new(q), UniPoly::new(r))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = mod_pos(a, m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    mod_pos(&e.x, m)
}

fn mul_mod(a: &UniPoly, b: &UniPoly, m: &BigInt) -> UniPoly {
    reduce_mod(&(a * b), m)
}

/// One quadratic Hensel step: from `f = g*h`, `s*g + t*h = 1` modulo `m`
/// (with `h` monic) to the same relations modulo `m^2`.
fn hensel_step(
    f: &UniPoly,
    g: &UniPoly,
    h: &UniPoly,
    s: &UniPoly,
    t: &UniPoly,
    m: &BigInt,
) -> (UniPoly, UniPoly, UniPoly, UniPoly) {
    let m2 = m * m;
    let e = reduce_mod(&(f - &(g * h)), &m2);
    let (q, r) = div_rem_mod(&mul_mod(s, &e, &m2), h, &m2);
    let g1 = reduce_mod(&(g + &(&(t * &e) + &(&q * g))), &m2);
    let h1 = reduce_mod(&(h + &r), &m2);
    let b = reduce_mod(&(&(&(s * &g1) + &(t * &h1)) - &UniPoly::one()), &m2);
    let (c, d) = div_rem_mod(&mul_mod(s, &b, &m2), &h1, &m2);
    let s1 = reduce_mod(&(s - &d), &m2);
    let t1 = reduce_mod(&(&(t - &(t * &b)) - &(&c * &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Bound on the coefficients of `lc(f) * g / lc(g)` for any factor `g` of `f`.
fn factor_coeff_bound(f: &UniPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1u32;
    let two_n = BigInt::one() << f.deg();
    f.lc().abs() * two_n * norm
}

/// Lifts the modular factorization of `f` to a modulus `p^(2^k)` exceeding
/// twice the factor coefficient bound. Returns monic lifted factors.
fn hensel_lift_all(ring: &PolyRing<SmallPrime>, f: &UniPoly, fac: &[Vec<u64>]) -> (Vec<UniPoly>, BigInt) {
    let p = BigInt::from(ring.field.0);
    let bound = factor_coeff_bound(f) * 2u32;
    let mut steps = 0u32;
    let mut m = p.clone();
    while m <= bound {
        m = &m * &m;
        steps += 1;
    }
    let lc = f.lc();
    (lift_tree(ring, f, &lc, fac, steps), m)
}

fn lift_tree(ring: &PolyRing<SmallPrime>, f: &UniPoly, lc: &BigInt, fac: &[Vec<u64>], steps: u32) -> Vec<UniPoly> {
    let p = BigInt::from(ring.field.0);
    let mut m_final = p.clone();
    for _ in 0..steps {
        m_final = &m_final * &m_final;
    }
    if fac.len() == 1 {
        let inv = mod_inverse(lc, &m_final);
        return vec![reduce_mod(&f.scale(&inv), &m_final)];
    }
    let (left, right) = fac.split_at(fac.len() / 2);
    let lc_p = ring.field.reduce_int(lc);
    let g0 = ring.scale(&left.iter().fold(ring.one(), |a, b| ring.mul(&a, b)), &lc_p);
    let h0 = right.iter().fold(ring.one(), |a, b| ring.mul(&a, b));
    let (_, s0, t0) = ring.ext_gcd(&g0, &h0);
    let (mut g, mut h, mut s, mut t) = (ring.lift(&g0), ring.lift(&h0), ring.lift(&s0), ring.lift(&t0));
    let mut m = p;
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = lift_tree(ring, &g, lc, left, steps);
    out.extend(lift_tree(ring, &h, &BigInt::one(), right, steps));
    out
}

/// Recombines lifted factors into true factors over `Z`, trying subsets in
/// order of size. Stops after `budget` subsets, leaving the rest unsplit.
fn recombine(f: &UniPoly, mut lifted: Vec<UniPoly>, m: &BigInt, budget: u64) -> Vec<(UniPoly, bool)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut tried = 0u64;
    let mut size = 1usize;
    'outer: while 2 * size <= lifted.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            if tried > budget {
                out.push((f, false));
                return out;
            }
            let lc = f.lc();
            let cand = idx
                .iter()
                .fold(UniPoly::constant(lc.clone()), |acc, &i| mul_mod(&acc, &lifted[i], m));
            let cand = symmetric(&cand, m);
            let constant_ok = {
                let c0 = cand.coeff(0);
                !c0.is_zero() && (&lc * f.coeff(0)).is_multiple_of(&c0)
            };
            if constant_ok {
                let g = cand.primitive_part();
                if let Some(q) = f.div_exact(&g) {
                    out.push((g, true));
                    f = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    out.push((f.primitive_part(), true));
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    fn polys(f: &PolyFactorization) -> Vec<(UniPoly, u32)> {
        f.factors.iter().map(|g| (g.poly.clone(), g.exponent)).collect()
    }

    #[test]
    fn rational_roots_split() {
        let f = factor_poly(&p(&[0, -3, 1]), &Budgets::default()).unwrap();
        assert_eq!(polys(&f), vec![(p(&[-3, 1]), 1), (p(&[0, 1]), 1)]);
        assert!(f.complete);
    }

    #[test]
    fn eisenstein_quartic_is_irreducible() {
        let f = factor_poly(&p(&[2, 0, 2, 0, 1]), &Budgets::default()).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert!(f.factors[0].irreducible);
        assert_eq!(f.factors[0].degree_patterns.len(), 3);
    }

    #[test]
    fn repeated_factor() {
        let f = factor_poly(&p(&[0, 0, -2, 0, 1]), &Budgets::default()).unwrap();
        assert_eq!(polys(&f), vec![(p(&[0, 1]), 2), (p(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_needs_recombination() {
        // x^4 + 1 splits modulo every prime but is irreducible.
        let f = factor_poly(&p(&[1, 0, 0, 0, 1]), &Budgets::default()).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert!(f.factors[0].irreducible);
        assert!(!f.factors[0].patterns_rule_out_splitting());
    }

    #[test]
    fn product_of_quadratics_with_content() {
        let g = &(&p(&[1, 1, 3]) * &p(&[-5, 0, 2])) * &p(&[7, 1]);
        let g = g.scale(&BigInt::from(-6));
        let f = factor_poly(&g, &Budgets::default()).unwrap();
        assert_eq!(f.product(), g);
        assert_eq!(f.factors.len(), 3);
        assert!(f.complete);
    }

    #[test]
    fn budget_exhaustion_leaves_unsplit() {
        let g = &p(&[1, 0, 0, 0, 1]) * &p(&[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let b = Budgets { recombination_budget: 1, ..Budgets::default() };
        let f = factor_poly(&g, &b).unwrap();
        assert!(!f.complete);
        assert_eq!(f.product(), g);
    }
}

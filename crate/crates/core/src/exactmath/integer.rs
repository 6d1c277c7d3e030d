use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::Budgets;
use crate::error::{Error, Result};

/// Miller-Rabin with the first twelve prime bases is a proof of primality
/// below this bound.
pub const MR_DETERMINISTIC_LIMIT: u128 = 318_665_857_834_031_151_167_461;

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_EXTRA_ROUNDS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime,
    /// Passed the fixed bases and 40 random bases but lies above the
    /// deterministic limit.
    ProbablePrime,
}

/// Primes up to `bound` (inclusive) by a plain sieve.
pub fn small_primes(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

fn passes_mr(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u32, a: &BigUint) -> bool {
    let a = a % n;
    if a.is_zero() {
        return true;
    }
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Miller-Rabin primality with the fixed base set, plus random bases above
/// [`MR_DETERMINISTIC_LIMIT`].
pub fn primality(n: &BigUint) -> Primality {
    if n < &BigUint::from(2u32) {
        return Primality::Composite;
    }
    for &b in MR_BASES.iter() {
        let b = BigUint::from(b);
        if n == &b {
            return Primality::Prime;
        }
        if (n % &b).is_zero() {
            return Primality::Composite;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0) as u32;
    let d = &n_minus_1 >> s;
    for &b in MR_BASES.iter() {
        if !passes_mr(n, &n_minus_1, &d, s, &BigUint::from(b)) {
            return Primality::Composite;
        }
    }
    if n.to_u128().is_some_and(|v| v < MR_DETERMINISTIC_LIMIT) {
        return Primality::Prime;
    }
    // Seeded from n so repeated runs agree.
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |acc, w| {
        acc.rotate_left(7) ^ w.wrapping_mul(0xbf58_476d_1ce4_e5b9)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    for _ in 0..MR_EXTRA_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        if !passes_mr(n, &n_minus_1, &d, s, &a) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n) != Primality::Composite
}

/// Prime factorization of `|n|`, possibly partial.
///
/// `product(p^e) * cofactor == |n|` always holds; `complete` iff the
/// cofactor is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub negative: bool,
    /// Ascending primes with exponents.
    pub factors: Vec<(BigUint, u32)>,
    /// Unsplit composite part (1 when complete).
    pub cofactor: BigUint,
    pub complete: bool,
    /// Listed primes above the deterministic Miller-Rabin range.
    pub probable: Vec<BigUint>,
}

impl IntFactorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Recomputes `|n|` from the parts.
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Unsplit cofactor, if any.
    pub fn unknown(&self) -> Option<&BigUint> {
        (!self.complete).then_some(&self.cofactor)
    }
}

fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in small_primes(bits as u64) {
        let k = k as u32;
        let r = n.nth_root(k);
        if r > BigUint::one() && &r.pow(k) == n {
            return Some((r, k));
        }
    }
    None
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// when the iteration budget runs out or the cycle closes without one.
fn pollard_brent(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |v: &BigUint| (v * v + &c) % n;
    let m = 64u64;
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = BigUint::one();
    let mut q = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let lim = m.min(r - k);
            if *budget < lim {
                *budget = 0;
                return None;
            }
            *budget -= lim;
            for _ in 0..lim {
                y = step(&y);
                q = (q * abs_diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Trial division up to `budget.trial_bound`, then Pollard rho within
/// `budget.rho_rounds` total iterations.
pub fn factor_integer(n: &BigInt, budget: &Budgets) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let negative = n.sign() == Sign::Minus;
    let mut m = n.magnitude().clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let bound = budget.trial_bound.max(2);
    for p in small_primes(bound) {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            found.push((pb, e));
        }
    }
    let mut cofactor = BigUint::one();
    let mut probable = Vec::new();
    let mut rho_left = budget.rho_rounds;
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        match primality(&m) {
            Primality::Prime => found.push((m, 1)),
            Primality::ProbablePrime => {
                probable.push(m.clone());
                found.push((m, 1));
            }
            Primality::Composite => {
                if let Some((r, k)) = perfect_power(&m) {
                    for _ in 0..k {
                        stack.push(r.clone());
                    }
                    continue;
                }
                let mut split = None;
                for c in 1..=16u64 {
                    if rho_left == 0 {
                        break;
                    }
                    if let Some(g) = pollard_brent(&m, c, &mut rho_left) {
                        split = Some(g);
                        break;
                    }
                }
                match split {
                    Some(g) => {
                        let h = &m / &g;
                        stack.push(g);
                        stack.push(h);
                    }
                    None => cofactor *= m,
                }
            }
        }
    }
    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in found {
        match factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => factors.push((p, e)),
        }
    }
    probable.sort();
    probable.dedup();
    let complete = cofactor.is_one();
    Ok(IntFactorization {
        negative,
        factors,
        cofactor,
        complete,
        probable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> IntFactorization {
        factor_integer(&BigInt::from(n), &Budgets::default()).unwrap()
    }

    #[test]
    fn small_examples() {
        let f = fac(512);
        assert_eq!(f.factors, vec![(BigUint::from(2u32), 9)]);
        assert!(f.complete);
        let f = fac(-4);
        assert!(f.negative);
        assert_eq!(f.factors, vec![(BigUint::from(2u32), 2)]);
        let f = fac(677);
        assert_eq!(f.factors, vec![(BigUint::from(677u32), 1)]);
        assert!(f.complete);
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(
            factor_integer(&BigInt::zero(), &Budgets::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn rho_splits_semiprime_beyond_trial_bound() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = BigInt::from(&p * &q * &p);
        let f = factor_integer(&n, &Budgets::default()).unwrap();
        assert!(f.complete);
        assert_eq!(f.exponent_of(&p), 2);
        assert_eq!(f.exponent_of(&q), 1);
    }

    #[test]
    fn exhausted_budget_reports_cofactor() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = BigInt::from(&p * &q * 12u32);
        let b = Budgets {
            rho_rounds: 0,
            ..Budgets::default()
        };
        let f = factor_integer(&n, &b).unwrap();
        assert!(!f.complete);
        assert_eq!(f.cofactor, &p * &q);
        assert_eq!(f.value(), n.magnitude().clone());
    }

    #[test]
    fn primality_cases() {
        assert_eq!(primality(&BigUint::from(1u32)), Primality::Composite);
        assert_eq!(primality(&BigUint::from(37u32)), Primality::Prime);
        // strong pseudoprime to bases 2..=37 below the limit would be caught; a Carmichael number:
        assert_eq!(primality(&BigUint::from(561u32)), Primality::Composite);
        let m61 = (BigUint::one() << 61u32) - 1u32;
        assert_eq!(primality(&m61), Primality::Prime);
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert_eq!(primality(&m127), Primality::ProbablePrime);
        assert_eq!(primality(&(&m127 * &m61)), Primality::Composite);
    }
}

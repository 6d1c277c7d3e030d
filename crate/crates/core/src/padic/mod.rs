//! `p`-adic valuations, Newton polygons and orbit-valuation searches.

pub(crate) mod newton;
mod orbit;

pub use newton::{integrality_obstruction, newton_polygon, root_valuation_multiset, NewtonPolygon, Segment};
pub use orbit::{lemma12_search, orbit_valuation_table, Lemma12Search, Lemma12Witness, OrbitRow};

use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{is_prime, BigRat};

/// A `p`-adic valuation; zero has valuation `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Valuation of an integer at `p`, without checking that `p` is prime.
pub(crate) fn vp_int(x: &BigInt, p: &BigUint) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p.clone());
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = (&x / &p, &x % &p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        x = q;
        v += 1;
    }
}

fn check_prime(p: &BigUint) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!("{p} is not prime")))
    }
}

pub fn vp(x: &BigRat, p: &BigUint) -> Result<Valuation> {
    check_prime(p)?;
    Ok(match (vp_int(x.numer(), p), vp_int(x.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => Valuation::Infinite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRat {
        BigRat::new(a.into(), b.into())
    }

    #[test]
    fn valuations() {
        let p = |n: u32| BigUint::from(n);
        assert_eq!(vp(&q(5, 1), &p(5)).unwrap(), Valuation::Finite(1));
        assert_eq!(vp(&q(-9, 2), &p(3)).unwrap(), Valuation::Finite(2));
        assert_eq!(vp(&q(-9, 2), &p(2)).unwrap(), Valuation::Finite(-1));
        assert_eq!(vp(&q(0, 1), &p(7)).unwrap(), Valuation::Infinite);
        assert!(matches!(vp(&q(4, 1), &p(6)), Err(Error::InvalidArgument(_))));
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinite);
    }
}

//! Hook for running independent per-prime work on several workers.

use alloc::vec::Vec;
use num_bigint::BigUint;

/// Maps a function over a list of primes.
///
/// Implementations must return results in input order; the sequential
/// executor here is the reference behaviour.
pub trait PrimeExecutor: Sync {
    fn map_primes<T: Send>(&self, primes: &[BigUint], f: &(dyn Fn(&BigUint) -> T + Sync)) -> Vec<T>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Sequential;

impl PrimeExecutor for Sequential {
    fn map_primes<T: Send>(&self, primes: &[BigUint], f: &(dyn Fn(&BigUint) -> T + Sync)) -> Vec<T> {
        primes.iter().map(f).collect()
    }
}

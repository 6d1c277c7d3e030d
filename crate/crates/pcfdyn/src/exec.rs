use num_bigint::BigUint;
use pcfdyn_core::exec::PrimeExecutor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Runs per-prime work on a dedicated rayon pool. Results come back in
/// input order, so output does not depend on the worker count.
pub struct RayonExecutor {
    pool: ThreadPool,
}

impl RayonExecutor {
    pub fn new(workers: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(RayonExecutor { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl PrimeExecutor for RayonExecutor {
    fn map_primes<T: Send>(&self, primes: &[BigUint], f: &(dyn Fn(&BigUint) -> T + Sync)) -> Vec<T> {
        self.pool.install(|| primes.par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order() {
        let primes: Vec<BigUint> = (1u32..200).map(BigUint::from).collect();
        let exec = RayonExecutor::new(8).unwrap();
        let out = exec.map_primes(&primes, &|p| p * 2u32);
        assert_eq!(out, primes.iter().map(|p| p * 2u32).collect::<Vec<_>>());
    }
}

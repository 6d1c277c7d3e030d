/// Effort limits shared by the factorization and iteration routines.
///
/// All budgets are per call; nothing is global.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Trial division runs over primes up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-rho iterations allowed in one integer factorization.
    pub rho_rounds: u64,
    /// Largest admissible `d^n` (coefficients per iterated form).
    pub degree_budget: usize,
    /// Subsets examined during Zassenhaus recombination.
    pub recombination_budget: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            trial_bound: 1 << 16,
            rho_rounds: 200_000,
            degree_budget: 4096,
            recombination_budget: 1 << 16,
        }
    }
}

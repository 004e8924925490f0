/// Effort caps shared by factorization, seed searches and the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Trial division runs over all primes up to this bound.
    pub trial_bound: u64,
    /// Total Pollard rho iterations allowed per factorization.
    pub rho_iterations: u64,
    /// Largest modulus handed to an exhaustive search (oracle or seed search).
    pub oracle_limit: u64,
}

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;
pub const DEFAULT_RHO_ITERATIONS: u64 = 1_000_000;
pub const DEFAULT_ORACLE_LIMIT: u64 = 1_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            trial_bound: DEFAULT_TRIAL_BOUND,
            rho_iterations: DEFAULT_RHO_ITERATIONS,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

impl Limits {
    /// Overrides both effort caps (rho iterations and exhaustive-search size)
    /// with one number; the trial-division bound is left alone.
    pub fn with_effort(limit: u64) -> Self {
        Limits {
            rho_iterations: limit,
            oracle_limit: limit,
            ..Limits::default()
        }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures across the toolkit. Numbers are carried as decimal strings so the
/// error type does not depend on the scalar type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arithmetic overflow in the chosen scalar type")]
    Overflow,

    #[error("factorization effort exhausted; unfactored cofactor {cofactor}")]
    FactorizationLimit { cofactor: String },

    #[error("word contains a zero partial quotient; normalize it first")]
    NotNormalized,

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("folding multiplier must be at least 1")]
    InvalidMultiplier,

    #[error("seed word must be canonical (last partial quotient >= 2)")]
    NonCanonicalSeed,

    #[error("no seed fraction guaranteed for {q}: {reason}")]
    SeedUnavailable { q: String, reason: String },

    #[error("no table entry for denominator {q}")]
    NoTableEntry { q: String },

    #[error("search for denominator {q} exceeds the configured limit {limit}")]
    SearchLimit { q: String, limit: u64 },

    #[error("modulus {q} exceeds the oracle limit {limit}")]
    OracleLimit { q: String, limit: u64 },

    #[error("construction invariant violated: {reason}\ntrace:\n{trace}")]
    InvariantViolated { reason: String, trace: String },

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

//! Continued fraction certificates with bounded partial quotients.
//!
//! For a modulus `q >= 2` the crate produces a numerator `a` coprime to `q`
//! together with an explicit word `a/q = [a_1, ..., a_r]` whose entries are at
//! most `rad(q) - 1` (at most 5 when `q = 2^n 3^m`, at most 3 for powers of 2
//! and 3), and an exhaustive oracle that computes the true minimum for
//! comparison.
//!
//! Everything is generic over the integer type through [`Natural`]; the
//! aliases below fix it to `u64` (fast, overflow reported as an error) or
//! [`BigUint`] (unbounded).
//!
//! ```
//! use zaremba_core::{construct, verify_certificate, BigCertificate};
//! use num_bigint::BigUint;
//!
//! let cert: BigCertificate = construct(&BigUint::from(20u32)).unwrap();
//! assert_eq!(cert.a, BigUint::from(9u32));
//! assert_eq!(cert.word.to_string(), "[2,4,2]");
//! assert!(verify_certificate(&cert).is_valid());
//! ```

pub mod arithmetic;
pub mod cf;
pub mod construct;
pub mod error;
pub mod folding;
pub mod limits;
mod natural;
pub mod oracle;

pub use num_bigint::BigUint;

pub use arithmetic::{
    decompose_chain, decompose_chain_with, euler_phi, factorize, factorize_with, gcd, is_prime, radical,
    small_divisors, ChainLevel, DecompositionChain, Factorization,
};
pub use cf::{alternate_rep, continuant, evaluate, expand, normalize, partial_quotient_max, ContinuedFraction, Rational};
pub use construct::{
    construct, construct_pow23, construct_pow23_with, construct_with, find_seed, find_seed_with, table_seed,
    verify_certificate, verify_certificate_with, Certificate, Method, SeedFraction, TraceStep, Verdict,
};
pub use error::{Error, Result};
pub use folding::{fold, fold_chain, fold_chain_bounded, FoldChain, FoldResult, FoldStep};
pub use limits::Limits;
pub use natural::{from_u64, Natural};
pub use oracle::{min_k, min_k_with, scan_range, OracleReport, ScanData, ScanRow};

pub type Rational64 = Rational<u64>;
pub type BigRational = Rational<BigUint>;
pub type ContinuedFraction64 = ContinuedFraction<u64>;
pub type BigContinuedFraction = ContinuedFraction<BigUint>;
pub type Factorization64 = Factorization<u64>;
pub type BigFactorization = Factorization<BigUint>;
pub type DecompositionChain64 = DecompositionChain<u64>;
pub type BigDecompositionChain = DecompositionChain<BigUint>;
pub type Certificate64 = Certificate<u64>;
pub type BigCertificate = Certificate<BigUint>;
pub type OracleReport64 = OracleReport<u64>;
pub type BigOracleReport = OracleReport<BigUint>;

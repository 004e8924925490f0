use clap::{Parser, Subcommand, ValueEnum};
use zaremba_core::BigUint;

#[derive(Debug, Parser)]
#[command(name = "zaremba", version, about = "Bounded continued fraction certificates for any modulus")]
pub struct Cli {
    /// Effort cap for factorization and exhaustive searches.
    #[arg(long, global = true, env = "ZAREMBA_ORACLE_LIMIT")]
    pub limit: Option<u64>,

    /// Emit the JSON envelope (the default for every command).
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a certificate a/q with bounded partial quotients.
    Construct {
        q: BigUint,
        /// Re-check the certificate before printing it.
        #[arg(long)]
        verify: bool,
    },
    /// Check K(a/q) against a bound (default: the bound construct claims for q).
    Verify {
        q: BigUint,
        a: BigUint,
        #[arg(long)]
        bound: Option<BigUint>,
    },
    /// Exhaustive minimum of K(a/q) over all a coprime to q.
    Oracle { q: BigUint },
    /// Oracle and construction side by side for every q in lo..=hi.
    Scan {
        lo: u64,
        hi: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
    /// Decomposition chain q(i-1) = p(i) q(i)^2.
    Chain { q: BigUint },
    /// Fold the canonical word of a/q with multiplier b.
    Fold { a: BigUint, q: BigUint, b: BigUint },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Verify { .. } => "verify",
            Command::Oracle { .. } => "oracle",
            Command::Scan { .. } => "scan",
            Command::Chain { .. } => "chain",
            Command::Fold { .. } => "fold",
        }
    }
}

//! Serialized shapes. Every integer that can grow with the modulus is a
//! decimal string.

use serde::{Deserialize, Serialize};
use zaremba_core::{
    BigUint, Certificate, ContinuedFraction, DecompositionChain, Factorization, OracleReport, ScanData,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<P> {
    pub schema_version: String,
    pub command: String,
    pub payload: P,
}

impl<P> Envelope<P> {
    pub fn new(command: &str, payload: P) -> Self {
        Envelope { schema_version: SCHEMA_VERSION.to_string(), command: command.to_string(), payload }
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn word(w: &ContinuedFraction<BigUint>) -> Vec<String> {
    strings(w.quotients())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<String>,
    pub denominator: String,
    pub max_quotient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePayload {
    pub q: String,
    pub a: String,
    pub cf: Vec<String>,
    #[serde(rename = "K")]
    pub k: String,
    pub bound: String,
    pub method: String,
    pub seed: Vec<String>,
    pub trace: Vec<TraceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl From<&Certificate<BigUint>> for CertificatePayload {
    fn from(c: &Certificate<BigUint>) -> Self {
        CertificatePayload {
            q: c.q.to_string(),
            a: c.a.to_string(),
            cf: word(&c.word),
            k: c.achieved_k.to_string(),
            bound: c.claimed_bound.to_string(),
            method: c.method.to_string(),
            seed: word(&c.seed),
            trace: c
                .trace
                .iter()
                .map(|s| TraceEntry {
                    step: s.description.clone(),
                    multiplier: s.multiplier.as_ref().map(ToString::to_string),
                    denominator: s.denominator.to_string(),
                    max_quotient: s.max_quotient.to_string(),
                })
                .collect(),
            verified: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub q: String,
    pub a: String,
    /// Representation with the smaller maximum.
    pub cf: Vec<String>,
    pub canonical_cf: Vec<String>,
    #[serde(rename = "K")]
    pub k: String,
    pub bound: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePayload {
    pub q: String,
    pub min_k_canonical: String,
    pub min_k_best_rep: String,
    pub minimizers_canonical: Vec<String>,
    pub minimizers_best_rep: Vec<String>,
}

impl From<&OracleReport<u64>> for OraclePayload {
    fn from(r: &OracleReport<u64>) -> Self {
        OraclePayload {
            q: r.q.to_string(),
            min_k_canonical: r.min_k_canonical.to_string(),
            min_k_best_rep: r.min_k_best_rep.to_string(),
            minimizers_canonical: strings(&r.minimizers_canonical),
            minimizers_best_rep: strings(&r.minimizers_best_rep),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub q: String,
    pub rad: String,
    pub min_k_canonical: String,
    pub min_k_best_rep: String,
    pub constructed_k: String,
    pub claimed_bound: String,
}

impl ScanEntry {
    pub fn new(q: u64, d: &ScanData<u64>) -> Self {
        ScanEntry {
            q: q.to_string(),
            rad: d.rad.to_string(),
            min_k_canonical: d.min_k_canonical.to_string(),
            min_k_best_rep: d.min_k_best_rep.to_string(),
            constructed_k: d.constructed_k.to_string(),
            claimed_bound: d.claimed_bound.to_string(),
        }
    }
}

/// One CSV line; field order is the fixed header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsvRow {
    pub q: u64,
    pub rad: u64,
    pub min_k_canonical: u64,
    pub constructed_k: u64,
    pub claimed_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPayload {
    pub lo: String,
    pub hi: String,
    pub rows: Vec<ScanEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: String,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub multiplier: String,
    pub quotient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPayload {
    pub q: String,
    pub factors: Vec<PrimePower>,
    pub rad: String,
    #[serde(rename = "N")]
    pub depth: usize,
    pub levels: Vec<Level>,
    pub terminal: String,
}

impl ChainPayload {
    pub fn new(f: &Factorization<BigUint>, rad: &BigUint, chain: &DecompositionChain<BigUint>) -> Self {
        ChainPayload {
            q: chain.modulus().to_string(),
            factors: f
                .factors()
                .iter()
                .map(|(p, e)| PrimePower { prime: p.to_string(), exponent: *e })
                .collect(),
            rad: rad.to_string(),
            depth: chain.depth(),
            levels: chain
                .levels()
                .iter()
                .map(|l| Level { multiplier: l.multiplier.to_string(), quotient: l.quotient.to_string() })
                .collect(),
            terminal: chain.terminal().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPayload {
    pub seed: String,
    pub seed_cf: Vec<String>,
    pub b: String,
    pub value: String,
    pub num: String,
    pub den: String,
    pub cf: Vec<String>,
    #[serde(rename = "K")]
    pub k: String,
}

//! Front end for `zaremba-core`: argument parsing, command dispatch and
//! JSON/CSV emission. [`run`] is the whole binary minus process exit.
//!
//! Exit codes: 0 success, 1 computation failure (including a bound that does
//! not hold), 2 usage, 3 effort limit exceeded.

pub mod args;
pub mod payload;

use std::io::Write;

use clap::Parser;
use serde::Serialize;
use zaremba_core::{
    construct_with, decompose_chain_with, expand, factorize_with, fold, min_k_with, radical, scan_range,
    verify_certificate_with, BigUint, DecompositionChain, Error, Limits, Rational,
};

use crate::args::{Cli, Command, OutFormat};
use crate::payload::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::FactorizationLimit { .. } | Error::SearchLimit { .. } | Error::OracleLimit { .. } => EXIT_LIMIT,
            Error::InvalidInput(_) | Error::InvalidMultiplier => EXIT_USAGE,
            _ => EXIT_COMPUTATION,
        };
        Failure { code, message: e.to_string() }
    }
}

/// What a successful command prints, and the exit code to leave with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: EXIT_OK }
    }
}

/// Parses `args` (program name first), executes, writes to `out`/`err` and
/// returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    let command = cli.command.name();
    match execute(&cli) {
        Ok(output) => {
            let _ = out.write_all(output.stdout.as_bytes());
            output.code
        }
        Err(f) => {
            let report = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "error": { "exit_code": f.code, "message": f.message },
            });
            let _ = writeln!(err, "{}", serde_json::to_string_pretty(&report).expect("json value"));
            f.code
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    let limits = cli.limit.map(Limits::with_effort).unwrap_or_default();
    let name = cli.command.name();
    match &cli.command {
        Command::Construct { q, verify } => cmd_construct(q, *verify, &limits).map(|p| envelope(name, p)),
        Command::Verify { q, a, bound } => cmd_verify(q, a, bound.as_ref(), &limits),
        Command::Oracle { q } => cmd_oracle(q, &limits).map(|p| envelope(name, p)),
        Command::Scan { lo, hi, out } => cmd_scan(*lo, *hi, *out, &limits),
        Command::Chain { q } => cmd_chain(q, &limits).map(|p| envelope(name, p)),
        Command::Fold { a, q, b } => cmd_fold(a, q, b).map(|p| envelope(name, p)),
    }
}

pub fn to_json<P: Serialize>(command: &str, payload: P) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope::new(command, payload)).expect("payload serializes");
    s.push('\n');
    s
}

fn envelope<P: Serialize>(command: &str, payload: P) -> Output {
    Output::ok(to_json(command, payload))
}

fn modulus(q: &BigUint) -> Result<(), Failure> {
    if *q < BigUint::from(2u32) {
        return Err(Failure::usage(format!("modulus must be at least 2, got {q}")));
    }
    Ok(())
}

fn fraction(a: &BigUint, q: &BigUint) -> Result<Rational<BigUint>, Failure> {
    modulus(q)?;
    Ok(Rational::new(a.clone(), q.clone())?)
}

fn cmd_construct(q: &BigUint, verify: bool, limits: &Limits) -> Result<CertificatePayload, Failure> {
    modulus(q)?;
    let cert = construct_with(q, limits)?;
    let mut payload = CertificatePayload::from(&cert);
    if verify {
        let verdict = verify_certificate_with(&cert, limits);
        if !verdict.is_valid() {
            return Err(Failure {
                code: EXIT_COMPUTATION,
                message: format!("certificate rejected: {}", verdict.reasons.join("; ")),
            });
        }
        payload.verified = Some(true);
    }
    Ok(payload)
}

fn cmd_verify(q: &BigUint, a: &BigUint, bound: Option<&BigUint>, limits: &Limits) -> Result<Output, Failure> {
    let x = fraction(a, q)?;
    let canonical = expand(&x);
    let best = canonical.best_representation()?;
    let bound = match bound {
        Some(b) => b.clone(),
        None => construct_with(q, limits)?.claimed_bound,
    };
    let k = best.max_quotient().clone();
    let holds = k <= bound;
    let payload = VerifyPayload {
        q: q.to_string(),
        a: a.to_string(),
        cf: best.quotients().iter().map(ToString::to_string).collect(),
        canonical_cf: canonical.quotients().iter().map(ToString::to_string).collect(),
        k: k.to_string(),
        bound: bound.to_string(),
        holds,
    };
    Ok(Output { stdout: to_json("verify", payload), code: if holds { EXIT_OK } else { EXIT_COMPUTATION } })
}

fn cmd_oracle(q: &BigUint, limits: &Limits) -> Result<OraclePayload, Failure> {
    modulus(q)?;
    let small = u64::try_from(q)
        .ok()
        .filter(|&q| q <= limits.oracle_limit)
        .ok_or_else(|| Error::OracleLimit { q: q.to_string(), limit: limits.oracle_limit })?;
    Ok(OraclePayload::from(&min_k_with(&small, limits)?))
}

fn cmd_scan(lo: u64, hi: u64, format: OutFormat, limits: &Limits) -> Result<Output, Failure> {
    let rows = scan_range::<u64>(lo, hi, limits)?;
    let mut data = Vec::with_capacity(rows.len());
    for row in rows {
        match row.outcome {
            Ok(d) => data.push((row.q, d)),
            Err(e) => {
                let mut f = Failure::from(e);
                f.message = format!("q={}: {}", row.q, f.message);
                return Err(f);
            }
        }
    }
    match format {
        OutFormat::Json => {
            let payload = ScanPayload {
                lo: lo.to_string(),
                hi: hi.to_string(),
                rows: data.iter().map(|(q, d)| ScanEntry::new(*q, d)).collect(),
            };
            Ok(envelope("scan", payload))
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for (q, d) in &data {
                w.serialize(CsvRow {
                    q: *q,
                    rad: d.rad,
                    min_k_canonical: d.min_k_canonical,
                    constructed_k: d.constructed_k,
                    claimed_bound: d.claimed_bound,
                })
                .map_err(|e| Failure { code: EXIT_COMPUTATION, message: e.to_string() })?;
            }
            let bytes = w.into_inner().map_err(|e| Failure { code: EXIT_COMPUTATION, message: e.to_string() })?;
            Ok(Output::ok(String::from_utf8(bytes).expect("csv of integers is utf-8")))
        }
    }
}

fn cmd_chain(q: &BigUint, limits: &Limits) -> Result<ChainPayload, Failure> {
    modulus(q)?;
    let f = factorize_with(q, limits)?;
    let rad = radical(&f)?;
    let chain: DecompositionChain<BigUint> = DecompositionChain::from_factorization(&f)?;
    debug_assert_eq!(chain, decompose_chain_with(q, limits)?);
    Ok(ChainPayload::new(&f, &rad, &chain))
}

fn cmd_fold(a: &BigUint, q: &BigUint, b: &BigUint) -> Result<FoldPayload, Failure> {
    let x = fraction(a, q)?;
    let seed = expand(&x);
    let folded = fold(&seed, b)?;
    Ok(FoldPayload {
        seed: x.to_string(),
        seed_cf: seed.quotients().iter().map(ToString::to_string).collect(),
        b: b.to_string(),
        value: folded.value.to_string(),
        num: folded.value.num().to_string(),
        den: folded.value.den().to_string(),
        cf: folded.word.quotients().iter().map(ToString::to_string).collect(),
        k: folded.word.max_quotient().to_string(),
    })
}

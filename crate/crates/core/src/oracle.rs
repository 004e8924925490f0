//! Exhaustive ground truth: the exact minimum of `K(a/q)` over all `a` coprime
//! to `q`, computed without touching the construction code path.
//!
//! Two conventions are reported. The canonical one measures the expansion
//! whose last quotient is at least 2. The best-representation one also allows
//! `[..., a_r - 1, 1]`, whose maximum is `max(prefix, a_r - 1, 1)`.

use rayon::prelude::*;

use crate::arithmetic::{factorize_with, radical};
use crate::construct::construct_with;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::natural::{from_u64, lit, Natural};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport<T> {
    pub q: T,
    pub min_k_canonical: T,
    pub min_k_best_rep: T,
    /// Ascending.
    pub minimizers_canonical: Vec<T>,
    /// Ascending.
    pub minimizers_best_rep: Vec<T>,
}

pub fn min_k<T: Natural>(q: &T) -> Result<OracleReport<T>> {
    min_k_with(q, &Limits::default())
}

/// Euclid on every `a` in `1..q`. A numerator is abandoned as soon as one of
/// its non-final quotients exceeds the best canonical value seen so far,
/// which cannot change either minimum or either minimizer list.
pub fn min_k_with<T: Natural>(q: &T, limits: &Limits) -> Result<OracleReport<T>> {
    if *q < lit(2) {
        return Err(Error::InvalidInput(format!("oracle needs q >= 2, got {q}")));
    }
    if T::from_u64(limits.oracle_limit).is_some_and(|limit| *q > limit) {
        return Err(Error::OracleLimit { q: q.to_string(), limit: limits.oracle_limit });
    }

    let mut best_canonical: Option<T> = None;
    let mut best_rep: Option<T> = None;
    let mut minimizers_canonical = Vec::new();
    let mut minimizers_best_rep = Vec::new();

    let mut a = T::one();
    'numerators: while a < *q {
        let (mut x, mut y) = (q.clone(), a.clone());
        let mut prefix_max = T::zero();
        let last = loop {
            let (quot, rem) = x.div_rem(&y);
            if rem.is_zero() {
                if !y.is_one() {
                    // gcd(a, q) = y
                    a = a + T::one();
                    continue 'numerators;
                }
                break quot;
            }
            if best_canonical.as_ref().is_some_and(|b| quot > *b) {
                a = a + T::one();
                continue 'numerators;
            }
            if quot > prefix_max {
                prefix_max = quot;
            }
            x = y;
            y = rem;
        };

        let canonical = if last > prefix_max { last.clone() } else { prefix_max.clone() };
        let shortened = last - T::one();
        let mut alt = if shortened > prefix_max { shortened } else { prefix_max };
        if alt.is_zero() {
            alt = T::one();
        }
        let best = if alt < canonical { alt } else { canonical.clone() };

        record(&mut best_canonical, &mut minimizers_canonical, canonical, &a);
        record(&mut best_rep, &mut minimizers_best_rep, best, &a);
        a = a + T::one();
    }

    Ok(OracleReport {
        q: q.clone(),
        min_k_canonical: best_canonical.expect("a = 1 is always coprime"),
        min_k_best_rep: best_rep.expect("a = 1 is always coprime"),
        minimizers_canonical,
        minimizers_best_rep,
    })
}

fn record<T: Natural>(best: &mut Option<T>, minimizers: &mut Vec<T>, k: T, a: &T) {
    match best {
        Some(b) if k > *b => {}
        Some(b) if k == *b => minimizers.push(a.clone()),
        _ => {
            *best = Some(k);
            minimizers.clear();
            minimizers.push(a.clone());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanData<T> {
    pub rad: T,
    pub min_k_canonical: T,
    /// Certificates may witness with either representation, so this (not the
    /// canonical minimum) is the lower bound for `constructed_k`.
    pub min_k_best_rep: T,
    pub constructed_k: T,
    pub claimed_bound: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow<T> {
    pub q: T,
    /// Per-row failures are kept here rather than aborting the scan.
    pub outcome: Result<ScanData<T>>,
}

/// One row per `q` in `lo..=hi`, in ascending order. Rows are computed in
/// parallel.
pub fn scan_range<T: Natural>(lo: u64, hi: u64, limits: &Limits) -> Result<Vec<ScanRow<T>>> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidInput(format!("scan range must satisfy 2 <= lo <= hi, got {lo}..={hi}")));
    }
    if hi > limits.oracle_limit {
        return Err(Error::OracleLimit { q: hi.to_string(), limit: limits.oracle_limit });
    }
    // fail early for scalar types too narrow for the range
    from_u64::<T>(hi)?;
    Ok((lo..=hi)
        .into_par_iter()
        .map(|q| {
            let q: T = lit(q);
            let outcome = scan_one(&q, limits);
            ScanRow { q, outcome }
        })
        .collect())
}

fn scan_one<T: Natural>(q: &T, limits: &Limits) -> Result<ScanData<T>> {
    let rad = radical(&factorize_with(q, limits)?)?;
    let report = min_k_with(q, limits)?;
    let cert = construct_with(q, limits)?;
    Ok(ScanData {
        rad,
        min_k_canonical: report.min_k_canonical,
        min_k_best_rep: report.min_k_best_rep,
        constructed_k: cert.achieved_k,
        claimed_bound: cert.claimed_bound,
    })
}

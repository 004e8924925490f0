//! Certificates `a/q = [a_1, ..., a_r]` with every partial quotient at most
//! `rad(q) - 1`, built by lifting a small fraction up the decomposition chain
//! with repeated folds.
//!
//! Branches, in the order they are tried:
//!
//! * `q = 2^n` or `3^n`: [`construct_pow23`], bound 3.
//! * `q` square-free: `(q-1)/q = [1, q-2, 1]`.
//! * `q = 2^n 3^m`: start from a tabulated fraction two or three levels up the
//!   chain, bound 5.
//! * `q(N)` not in {2, 3, 6}: a seed fraction for `q(N)` lifted by
//!   `p(N), ..., p(1)`.
//! * `q(N)` in {2, 3, 6} (then `rad(q) >= 10`): start from `1/q(N)`.

use std::fmt;
use std::str::FromStr;

use crate::arithmetic::{euler_phi, factorize_with, radical, DecompositionChain, Factorization};
use crate::cf::{expand, fold_value, ContinuedFraction, Rational};
use crate::error::{Error, Result};
use crate::folding::{fold_chain_bounded, FoldChain};
use crate::limits::Limits;
use crate::natural::{lit, sub, Natural};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SquarefreeDirect,
    Case1,
    Case2,
    Table2a3b,
    Pow23Fallback,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::SquarefreeDirect,
        Method::Case1,
        Method::Case2,
        Method::Table2a3b,
        Method::Pow23Fallback,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::SquarefreeDirect => "squarefree_direct",
            Method::Case1 => "case1",
            Method::Case2 => "case2",
            Method::Table2a3b => "table_2a3b",
            Method::Pow23Fallback => "pow23_fallback",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<T> {
    pub description: String,
    /// Set for fold steps only.
    pub multiplier: Option<T>,
    pub denominator: T,
    pub max_quotient: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<T> {
    pub q: T,
    pub a: T,
    /// The witnessing word; not necessarily canonical (e.g. `[1, q-2, 1]`).
    pub word: ContinuedFraction<T>,
    pub achieved_k: T,
    pub claimed_bound: T,
    pub method: Method,
    /// Starting word of the fold chain; equal to `word` when nothing was folded.
    pub seed: ContinuedFraction<T>,
    pub trace: Vec<TraceStep<T>>,
}

impl<T: Natural> Certificate<T> {
    pub fn fold_multipliers(&self) -> Vec<T> {
        self.trace.iter().filter_map(|s| s.multiplier.clone()).collect()
    }

    /// Re-runs the recorded folds from the seed.
    pub fn replay(&self) -> Result<FoldChain<T>> {
        fold_chain_bounded(&self.seed, &self.fold_multipliers(), None)
    }
}

/// A fraction `a/q` (q square-free) whose canonical word has length >= 2,
/// both end quotients >= 2, and every quotient at most `(q-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedFraction<T> {
    pub q_seed: T,
    pub a_seed: T,
    pub word: ContinuedFraction<T>,
}

/// Smallest `a` coprime to `q` whose canonical word satisfies `accept`.
fn search<T, F>(q: &T, mut accept: F) -> Result<Option<(T, ContinuedFraction<T>)>>
where
    T: Natural,
    F: FnMut(&ContinuedFraction<T>) -> bool,
{
    let mut a = T::one();
    while a < *q {
        if a.gcd(q).is_one() {
            let word = expand(&Rational::new(a.clone(), q.clone())?);
            if accept(&word) {
                return Ok(Some((a, word)));
            }
        }
        a = a + T::one();
    }
    Ok(None)
}

fn is_seed_word<T: Natural>(word: &ContinuedFraction<T>, q: &T) -> bool {
    let two: T = lit(2);
    // max <= (q-1)/2  <=>  2 max <= q - 1
    word.len() >= 2
        && *word.first() >= two
        && *word.last() >= two
        && word.max_quotient().checked_mul(&two).is_some_and(|m| m < *q)
}

pub fn find_seed<T: Natural>(q: &T) -> Result<SeedFraction<T>> {
    find_seed_with(q, &Limits::default())
}

pub fn find_seed_with<T: Natural>(q: &T, limits: &Limits) -> Result<SeedFraction<T>> {
    let inapplicable = |reason: &str| Error::SeedUnavailable { q: q.to_string(), reason: reason.into() };
    if *q < lit(5) {
        return Err(inapplicable("needs q >= 5"));
    }
    let f = factorize_with(q, limits)?;
    if !f.is_squarefree() {
        return Err(inapplicable("q is not square-free"));
    }
    if euler_phi(&f)? < lit(4) {
        return Err(inapplicable("phi(q) < 4"));
    }
    match search(q, |w| is_seed_word(w, q))? {
        Some((a_seed, word)) => Ok(SeedFraction { q_seed: q.clone(), a_seed, word }),
        None => Err(Error::InternalContradiction(format!("no seed fraction with denominator {q}"))),
    }
}

/// Tabulated fractions `a/q(N-1)` for `q = 2^n 3^m`, one per
/// `q(N-1) = p * q(N)^2` with `q(N)` in {2, 3, 6} and `p | 6`.
pub const LEVEL_ONE_TABLE: [(u64, u64, &[u64]); 12] = [
    (1, 4, &[4]),
    (3, 8, &[2, 1, 2]),
    (5, 12, &[2, 2, 2]),
    (7, 24, &[3, 2, 3]),
    (2, 9, &[4, 2]),
    (5, 18, &[3, 1, 1, 2]),
    (8, 27, &[3, 2, 1, 2]),
    (17, 54, &[3, 5, 1, 2]),
    (11, 36, &[3, 3, 1, 2]),
    (17, 72, &[4, 4, 4]),
    (23, 108, &[4, 1, 2, 3, 2]),
    (49, 216, &[4, 2, 2, 4, 2]),
];

/// Replacements for the `1/4` row one level further up: denominators `p * 16`.
pub const QUARTER_TABLE: [(u64, u64, &[u64]); 4] = [
    (7, 16, &[2, 3, 2]),
    (9, 32, &[3, 1, 1, 4]),
    (13, 48, &[3, 1, 2, 4]),
    (29, 96, &[3, 3, 4, 2]),
];

pub fn table_seed<T: Natural>(q_level: &T) -> Result<(T, ContinuedFraction<T>)> {
    let no_entry = || Error::NoTableEntry { q: q_level.to_string() };
    let den = q_level.to_u64().ok_or_else(no_entry)?;
    let (a, _, word) = LEVEL_ONE_TABLE
        .iter()
        .chain(QUARTER_TABLE.iter())
        .find(|(_, d, _)| *d == den)
        .ok_or_else(no_entry)?;
    let word = ContinuedFraction::new(word.iter().map(|&x| lit(x)).collect())?;
    Ok((lit(*a), word))
}

pub fn construct<T: Natural>(q: &T) -> Result<Certificate<T>> {
    construct_with(q, &Limits::default())
}

pub fn construct_with<T: Natural>(q: &T, limits: &Limits) -> Result<Certificate<T>> {
    if *q < lit(2) {
        return Err(Error::InvalidInput(format!("modulus {q} must be at least 2")));
    }
    let f = factorize_with(q, limits)?;
    if f.is_power_of(2) || f.is_power_of(3) {
        return pow23(q, &f, limits);
    }
    let chain = DecompositionChain::from_factorization(&f)?;
    let rad = radical(&f)?;
    let n = chain.depth();

    if n == 0 {
        let a = sub(q, &T::one())?;
        let word = ContinuedFraction::new(vec![T::one(), sub(q, &lit(2))?, T::one()])?;
        let step = TraceStep {
            description: format!("(q-1)/q = {word} for square-free q"),
            multiplier: None,
            denominator: q.clone(),
            max_quotient: word.max_quotient().clone(),
        };
        return finish(q, a, word.clone(), sub(&rad, &T::one())?, Method::SquarefreeDirect, word, vec![step]);
    }

    if f.is_3_smooth() {
        let start = if *chain.q(n - 1) == lit(4) {
            if n < 2 {
                return Err(Error::InternalContradiction(format!("{q} reached the 1/4 branch without a level above")));
            }
            n - 2
        } else {
            n - 1
        };
        let (a, seed) = table_seed(chain.q(start)).map_err(|e| {
            Error::InternalContradiction(format!("chain of {q} left the table at level {start}: {e}"))
        })?;
        let description = format!("table entry {a}/{} = {seed}", chain.q(start));
        return lift(q, &chain, start, seed, description, lit(5), Method::Table2a3b);
    }

    let bound = sub(&rad, &T::one())?;
    let terminal = chain.terminal().clone();
    let small = [lit::<T>(2), lit(3), lit(6)];
    if !small.contains(&terminal) {
        let seed = find_seed_with(&terminal, limits)?;
        let description = format!("seed {}/{} = {}", seed.a_seed, terminal, seed.word);
        return lift(q, &chain, n, seed.word, description, bound, Method::Case1);
    }

    if rad < lit(10) {
        return Err(Error::InternalContradiction(format!("{q}: terminal {terminal} with radical {rad} < 10")));
    }
    let seed = ContinuedFraction::new(vec![terminal.clone()])?;
    let description = format!("1/{terminal} = {seed}");
    lift(q, &chain, n, seed, description, bound, Method::Case2)
}

/// Folds `seed` (denominator `q(start)`) up to `q(0)` with `p(start), ..., p(1)`,
/// checking the bound after every fold.
fn lift<T: Natural>(
    q: &T,
    chain: &DecompositionChain<T>,
    start: usize,
    seed: ContinuedFraction<T>,
    description: String,
    bound: T,
    method: Method,
) -> Result<Certificate<T>> {
    let mut trace = vec![TraceStep {
        description,
        multiplier: None,
        denominator: chain.q(start).clone(),
        max_quotient: seed.max_quotient().clone(),
    }];
    if *seed.max_quotient() > bound {
        return Err(Error::InvariantViolated {
            reason: format!("{q}: seed {seed} already exceeds {bound}"),
            trace: String::new(),
        });
    }
    let multipliers = chain.lift_multipliers(start);
    let folded = fold_chain_bounded(&seed, &multipliers, Some(&bound)).map_err(|e| match e {
        Error::InvariantViolated { reason, trace } => {
            Error::InvariantViolated { reason: format!("{q} via {method}: {reason}"), trace }
        }
        other => other,
    })?;
    for (i, step) in folded.steps.iter().enumerate() {
        trace.push(TraceStep {
            description: format!("fold with p({})", start - i),
            multiplier: Some(step.multiplier.clone()),
            denominator: step.denominator.clone(),
            max_quotient: step.max_quotient.clone(),
        });
    }
    let a = folded.value.num().clone();
    if folded.value.den() != q {
        return Err(Error::InternalContradiction(format!(
            "lift of {seed} ended at denominator {}, expected {q}",
            folded.value.den()
        )));
    }
    finish(q, a, folded.word, bound, method, seed, trace)
}

fn finish<T: Natural>(
    q: &T,
    a: T,
    word: ContinuedFraction<T>,
    claimed_bound: T,
    method: Method,
    seed: ContinuedFraction<T>,
    trace: Vec<TraceStep<T>>,
) -> Result<Certificate<T>> {
    let achieved_k = word.max_quotient().clone();
    if achieved_k > claimed_bound {
        return Err(Error::InvariantViolated {
            reason: format!("{q} via {method}: K = {achieved_k} > {claimed_bound}"),
            trace: trace.iter().map(|s| format!("  {}", s.description)).collect::<Vec<_>>().join("\n"),
        });
    }
    Ok(Certificate { q: q.clone(), a, word, achieved_k, claimed_bound, method, seed, trace })
}

pub fn construct_pow23<T: Natural>(q: &T) -> Result<Certificate<T>> {
    construct_pow23_with(q, &Limits::default())
}

pub fn construct_pow23_with<T: Natural>(q: &T, limits: &Limits) -> Result<Certificate<T>> {
    if *q < lit(2) {
        return Err(Error::InvalidInput(format!("modulus {q} must be at least 2")));
    }
    let f = factorize_with(q, limits)?;
    if !(f.is_power_of(2) || f.is_power_of(3)) {
        return Err(Error::InvalidInput(format!("{q} is not a power of 2 or 3")));
    }
    pow23(q, &f, limits)
}

/// Powers of 2 and 3, bound 3.
///
/// Folding `[2]` or `[3]` along the chain alone does not stay within 3 (16
/// would need `[5, 3]`), so the chain is entered at its deepest level that
/// has a word with both end quotients 2 and all quotients at most 3. Folds
/// with `b` in {1, 2, 3} then never exceed 3. Levels without such a word and
/// small moduli fall back to a direct search over both representations.
fn pow23<T: Natural>(q: &T, f: &Factorization<T>, limits: &Limits) -> Result<Certificate<T>> {
    let bound: T = lit(3);
    let two: T = lit(2);
    let chain = DecompositionChain::from_factorization(f)?;
    let cap = T::from_u64(limits.oracle_limit);
    let within_cap = |x: &T| cap.as_ref().is_none_or(|c| x <= c);

    for i in (1..=chain.depth()).rev() {
        let level = chain.q(i);
        if !within_cap(level) {
            break;
        }
        let found = search(level, |w| {
            w.len() >= 2 && *w.first() == two && *w.last() == two && *w.max_quotient() <= bound
        })?;
        if let Some((a, seed)) = found {
            let description = format!("foldable word {a}/{level} = {seed}");
            return lift(q, &chain, i, seed, description, bound, Method::Pow23Fallback);
        }
    }

    if !within_cap(q) {
        return Err(Error::SearchLimit { q: q.to_string(), limit: limits.oracle_limit });
    }
    let mut best = None;
    let mut a = T::one();
    while a < *q {
        if a.gcd(q).is_one() {
            let word = expand(&Rational::new(a.clone(), q.clone())?).best_representation()?;
            if *word.max_quotient() <= bound {
                best = Some((a, word));
                break;
            }
        }
        a = a + T::one();
    }
    let Some((a, word)) = best else {
        return Err(Error::InvariantViolated {
            reason: format!("no numerator for {q} with all partial quotients <= 3"),
            trace: String::new(),
        });
    };
    let step = TraceStep {
        description: format!("direct search {a}/{q} = {word}"),
        multiplier: None,
        denominator: q.clone(),
        max_quotient: word.max_quotient().clone(),
    };
    finish(q, a, word.clone(), bound, Method::Pow23Fallback, word, vec![step])
}

/// Outcome of [`verify_certificate`]; valid when no reasons were recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub reasons: Vec<String>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }
}

pub fn verify_certificate<T: Natural>(c: &Certificate<T>) -> Verdict {
    verify_certificate_with(c, &Limits::default())
}

/// Recomputes every certificate invariant from scratch.
pub fn verify_certificate_with<T: Natural>(c: &Certificate<T>, limits: &Limits) -> Verdict {
    let mut reasons = Vec::new();
    if c.a.is_zero() || c.a >= c.q {
        reasons.push(format!("numerator {} not in (0, {})", c.a, c.q));
    }
    if !c.a.gcd(&c.q).is_one() {
        reasons.push(format!("gcd({}, {}) != 1", c.a, c.q));
    }
    match fold_value(c.word.quotients()) {
        Ok((num, den)) if num == c.a && den == c.q => {}
        Ok((num, den)) => reasons.push(format!("{} evaluates to {num}/{den}, not {}/{}", c.word, c.a, c.q)),
        Err(e) => reasons.push(format!("cannot evaluate {}: {e}", c.word)),
    }
    let max = c.word.max_quotient();
    if *max != c.achieved_k {
        reasons.push(format!("achieved K {} but word maximum is {max}", c.achieved_k));
    }
    if *max > c.claimed_bound {
        reasons.push(format!("partial quotient {max} exceeds bound {}", c.claimed_bound));
    }
    match factorize_with(&c.q, limits) {
        Err(e) => reasons.push(format!("cannot factor {}: {e}", c.q)),
        Ok(f) => match expected_bound(&f, c.method) {
            Err(e) => reasons.push(e),
            Ok(expected) if expected != c.claimed_bound => reasons.push(format!(
                "method {} on {} claims {} instead of {expected}",
                c.method, c.q, c.claimed_bound
            )),
            Ok(_) => {}
        },
    }
    Verdict { reasons }
}

fn expected_bound<T: Natural>(f: &Factorization<T>, method: Method) -> std::result::Result<T, String> {
    let rad = radical(f).map_err(|e| e.to_string())?;
    let pure = f.is_power_of(2) || f.is_power_of(3);
    match method {
        Method::Pow23Fallback if pure => Ok(lit(3)),
        Method::Pow23Fallback => Err("pow23_fallback used on a modulus that is not a power of 2 or 3".into()),
        Method::Table2a3b if f.is_3_smooth() && !pure => Ok(lit(5)),
        Method::Table2a3b => Err("table_2a3b used outside 2^n 3^m".into()),
        Method::SquarefreeDirect if !f.is_squarefree() => Err("squarefree_direct used on a non-square-free modulus".into()),
        _ => sub(&rad, &T::one()).map_err(|e| e.to_string()),
    }
}

//! The folding identity
//!
//! ```text
//! t/q + (-1)^r / (b q^2) = [a_1, ..., a_r, b - 1, 1, a_r - 1, a_{r-1}, ..., a_1]
//! ```
//!
//! for `t/q = [a_1, ..., a_r]` and an integer `b >= 1`. The seed is always
//! consumed in canonical form, so `r` is the canonical length and the sign
//! follows from it. With `b = 1` the `0` entry collapses and the word becomes
//! `[a_1, ..., a_{r-1}, a_r + 1, a_r - 1, ..., a_1]`.

use crate::cf::{normalize, ContinuedFraction, Rational};
use crate::error::{Error, Result};
use crate::natural::{add, mul, sub, Natural};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldResult<T> {
    /// Normalized and canonical.
    pub word: ContinuedFraction<T>,
    pub value: Rational<T>,
    pub multiplier: T,
}

/// The unnormalized word `[a_1..a_r, b-1, 1, a_r - 1, .., a_1]`.
pub fn raw_fold_word<T: Natural>(seed: &ContinuedFraction<T>, b: &T) -> Result<Vec<T>> {
    if b.is_zero() {
        return Err(Error::InvalidMultiplier);
    }
    let q = seed.quotients();
    let r = q.len();
    let mut raw = Vec::with_capacity(2 * r + 2);
    raw.extend_from_slice(q);
    raw.push(b.clone() - T::one());
    raw.push(T::one());
    raw.push(sub(&q[r - 1], &T::one())?);
    raw.extend(q[..r - 1].iter().rev().cloned());
    Ok(raw)
}

/// `t/q + (-1)^r/(b q^2)` as a reduced fraction, computed directly from the
/// seed's value.
pub fn folded_value<T: Natural>(seed: &Rational<T>, r: usize, b: &T) -> Result<Rational<T>> {
    if b.is_zero() {
        return Err(Error::InvalidMultiplier);
    }
    let (t, q) = (seed.num(), seed.den());
    let den = mul(b, &mul(q, q)?)?;
    let tbq = mul(&mul(t, b)?, q)?;
    let num = if r.is_multiple_of(2) { add(&tbq, &T::one())? } else { sub(&tbq, &T::one())? };
    Rational::new(num, den)
}

pub fn fold<T: Natural>(seed: &ContinuedFraction<T>, b: &T) -> Result<FoldResult<T>> {
    if b.is_zero() {
        return Err(Error::InvalidMultiplier);
    }
    if !seed.is_canonical() {
        return Err(Error::NonCanonicalSeed);
    }
    let raw = raw_fold_word(seed, b)?;
    let word = normalize(&raw)?.canonical()?;
    let value = folded_value(&seed.evaluate()?, seed.len(), b)?;
    if word.evaluate()? != value {
        return Err(Error::InternalContradiction(format!(
            "fold of {seed} by {b} gave word {word} but value {value}"
        )));
    }
    Ok(FoldResult { word, value, multiplier: b.clone() })
}

/// One application inside [`fold_chain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldStep<T> {
    pub multiplier: T,
    pub denominator: T,
    pub max_quotient: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldChain<T> {
    pub word: ContinuedFraction<T>,
    pub value: Rational<T>,
    pub steps: Vec<FoldStep<T>>,
}

/// Left fold of [`fold`] over `multipliers`; every step's output is canonical
/// and feeds the next one.
pub fn fold_chain<T: Natural>(seed: &ContinuedFraction<T>, multipliers: &[T]) -> Result<FoldChain<T>> {
    fold_chain_bounded(seed, multipliers, None)
}

/// [`fold_chain`] that stops with [`Error::InvariantViolated`] as soon as an
/// intermediate word has a partial quotient above `bound`.
pub fn fold_chain_bounded<T: Natural>(
    seed: &ContinuedFraction<T>,
    multipliers: &[T],
    bound: Option<&T>,
) -> Result<FoldChain<T>> {
    let mut word = seed.clone();
    let mut value = seed.evaluate()?;
    let mut steps = Vec::with_capacity(multipliers.len());
    for b in multipliers {
        let folded = fold(&word, b)?;
        let max_quotient = folded.word.max_quotient().clone();
        steps.push(FoldStep {
            multiplier: b.clone(),
            denominator: folded.value.den().clone(),
            max_quotient: max_quotient.clone(),
        });
        if let Some(bound) = bound {
            if max_quotient > *bound {
                let trace = steps
                    .iter()
                    .map(|s| format!("  fold b={} -> den {} max {}", s.multiplier, s.denominator, s.max_quotient))
                    .collect::<Vec<_>>()
                    .join("\n");
                return Err(Error::InvariantViolated {
                    reason: format!(
                        "seed {seed}: word {} has partial quotient {max_quotient} > {bound}",
                        folded.word
                    ),
                    trace,
                });
            }
        }
        word = folded.word;
        value = folded.value;
    }
    Ok(FoldChain { word, value, steps })
}

/// `gcd(t q b + (-1)^r, b q^2)`; equals 1 whenever `b >= 1`.
pub fn reducedness_gcd<T: Natural>(seed: &Rational<T>, r: usize, b: &T) -> Result<T> {
    let den = mul(b, &mul(seed.den(), seed.den())?)?;
    let tqb = mul(&mul(seed.num(), seed.den())?, b)?;
    let num = if r.is_multiple_of(2) { add(&tqb, &T::one())? } else { sub(&tqb, &T::one())? };
    Ok(num.gcd(&den))
}

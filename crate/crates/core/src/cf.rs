//! Finite simple continued fractions `[a_1, ..., a_r] = 1/(a_1 + 1/(a_2 + ...))`
//! of reduced fractions in (0, 1).
//!
//! Every rational in (0, 1) has exactly two expansions, `[..., a_r]` with
//! `a_r >= 2` (the canonical one) and `[..., a_r - 1, 1]`. Words of length one
//! are canonical as well: `1/q = [q] = [q - 1, 1]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::natural::{add, lit, mul_add, Natural};

/// A reduced fraction `num/den` with `0 < num < den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational<T> {
    num: T,
    den: T,
}

impl<T: Natural> Rational<T> {
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() || num >= den {
            return Err(Error::InvalidInput(format!("{num}/{den} is not in (0, 1)")));
        }
        if !num.gcd(&den).is_one() {
            return Err(Error::InvalidInput(format!("{num}/{den} is not reduced")));
        }
        Ok(Rational { num, den })
    }

    pub fn num(&self) -> &T {
        &self.num
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    pub fn into_parts(self) -> (T, T) {
        (self.num, self.den)
    }
}

impl<T: fmt::Display> fmt::Display for Rational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A nonempty word of partial quotients, all at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction<T> {
    quotients: Vec<T>,
}

impl<T: Natural> ContinuedFraction<T> {
    /// Rejects empty words and zero entries (use [`normalize`] for those).
    pub fn new(quotients: Vec<T>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if quotients.iter().any(T::is_zero) {
            return Err(Error::NotNormalized);
        }
        if quotients.len() == 1 && quotients[0].is_one() {
            return Err(Error::InvalidWord("[1] has value 1, outside (0, 1)".into()));
        }
        Ok(ContinuedFraction { quotients })
    }

    pub fn quotients(&self) -> &[T] {
        &self.quotients
    }

    pub fn into_quotients(self) -> Vec<T> {
        self.quotients
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> &T {
        &self.quotients[0]
    }

    pub fn last(&self) -> &T {
        &self.quotients[self.quotients.len() - 1]
    }

    /// Last entry at least 2, or a single entry.
    pub fn is_canonical(&self) -> bool {
        self.quotients.len() == 1 || !self.last().is_one()
    }

    /// `K`: the largest partial quotient of this particular word.
    pub fn max_quotient(&self) -> &T {
        self.quotients.iter().max().expect("word is nonempty")
    }

    pub fn evaluate(&self) -> Result<Rational<T>> {
        let (num, den) = fold_value(&self.quotients)?;
        Ok(Rational { num, den })
    }

    /// The other expansion of the same value: `[..., a_r]` with `a_r >= 2`
    /// becomes `[..., a_r - 1, 1]`, and `[..., a, 1]` becomes `[..., a + 1]`.
    pub fn alternate(&self) -> Result<Self> {
        let mut q = self.quotients.clone();
        let last = q.pop().expect("word is nonempty");
        if last.is_one() {
            match q.last_mut() {
                Some(prev) => *prev = add(prev, &T::one())?,
                None => return Err(Error::InvalidWord("[1] has no alternate".into())),
            }
        } else {
            q.push(last - T::one());
            q.push(T::one());
        }
        Ok(ContinuedFraction { quotients: q })
    }

    /// Canonical representative of the same value.
    pub fn canonical(self) -> Result<Self> {
        if self.is_canonical() {
            Ok(self)
        } else {
            self.alternate()
        }
    }

    /// The representation (this one or its alternate) with the smaller
    /// maximum; the canonical one on ties.
    pub fn best_representation(&self) -> Result<Self> {
        let canonical = self.clone().canonical()?;
        let alt = canonical.alternate()?;
        Ok(if alt.max_quotient() < canonical.max_quotient() { alt } else { canonical })
    }

    pub fn reversed(&self) -> Self {
        let mut q = self.quotients.clone();
        q.reverse();
        ContinuedFraction { quotients: q }
    }
}

impl<T: fmt::Display> fmt::Display for ContinuedFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.quotients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// Canonical expansion by the Euclidean algorithm.
pub fn expand<T: Natural>(x: &Rational<T>) -> ContinuedFraction<T> {
    let (mut a, mut b) = (x.den.clone(), x.num.clone());
    let mut quotients = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        quotients.push(q);
        a = b;
        b = r;
    }
    ContinuedFraction { quotients }
}

pub fn evaluate<T: Natural>(w: &ContinuedFraction<T>) -> Result<Rational<T>> {
    w.evaluate()
}

pub fn alternate_rep<T: Natural>(w: &ContinuedFraction<T>) -> Result<ContinuedFraction<T>> {
    w.alternate()
}

pub fn partial_quotient_max<T: Natural>(w: &ContinuedFraction<T>) -> T {
    w.max_quotient().clone()
}

/// Numerator and denominator of `[a_1, ..., a_n]` from the convergent
/// recurrence. Zero entries are allowed and behave as `[.., x, 0, y, ..] = [.., x + y, ..]`.
/// Returns `(K(a_2..a_n), K(a_1..a_n))`; the pair is always coprime.
pub fn fold_value<T: Natural>(quotients: &[T]) -> Result<(T, T)> {
    // p/q convergents of [0; a_1, ..., a_n]
    let (mut p_prev, mut p) = (T::one(), T::zero());
    let (mut q_prev, mut q) = (T::zero(), T::one());
    for a in quotients {
        let p_next = mul_add(a, &p, &p_prev)?;
        let q_next = mul_add(a, &q, &q_prev)?;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Ok((p, q))
}

/// The continuant `<a_1, ..., a_n>`, i.e. the denominator of `[a_1, ..., a_n]`.
pub fn continuant<T: Natural>(quotients: &[T]) -> Result<T> {
    Ok(fold_value(quotients)?.1)
}

/// Removes interior zeros via `[.., x, 0, y, ..] = [.., x + y, ..]`.
pub fn normalize<T: Natural>(quotients: &[T]) -> Result<ContinuedFraction<T>> {
    match (quotients.first(), quotients.last()) {
        (None, _) | (_, None) => return Err(Error::InvalidWord("empty word".into())),
        (Some(f), _) if f.is_zero() => return Err(Error::InvalidWord("leading zero".into())),
        (_, Some(l)) if l.is_zero() => return Err(Error::InvalidWord("trailing zero".into())),
        _ => {}
    }
    let mut out: Vec<T> = Vec::with_capacity(quotients.len());
    for a in quotients {
        if out.last().is_some_and(T::is_zero) {
            out.pop();
            let top = out.last_mut().expect("first entry is nonzero");
            *top = add(top, a)?;
        } else {
            out.push(a.clone());
        }
    }
    ContinuedFraction::new(out)
}

/// Canonical expansion of `num/den`; convenience for callers holding raw integers.
pub fn expand_parts<T: Natural>(num: T, den: T) -> Result<ContinuedFraction<T>> {
    Ok(expand(&Rational::new(num, den)?))
}

/// `1/q = [q]`.
pub fn unit_fraction<T: Natural>(q: T) -> Result<ContinuedFraction<T>> {
    if q < lit(2) {
        return Err(Error::InvalidInput(format!("1/{q} is not in (0, 1)")));
    }
    Ok(ContinuedFraction { quotients: vec![q] })
}

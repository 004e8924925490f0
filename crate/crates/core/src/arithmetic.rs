//! Integer utilities: gcd, factorization, radical, Euler's totient, the
//! square-free decomposition chain `q(i-1) = p(i) * q(i)^2`, and small divisors.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::{Limits, DEFAULT_TRIAL_BOUND};
use crate::natural::{lit, mul, Natural};

/// Seed for the rho walk. Fixed so factorizations are reproducible.
const RHO_SEED: u64 = 0x5a52_454d_4241_0001;

/// Miller-Rabin bases; deterministic for every n < 3.3 * 10^24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn gcd<T: Natural>(a: &T, b: &T) -> T {
    a.gcd(b)
}

/// Prime factorization with strictly increasing primes and positive exponents.
/// The empty factorization stands for 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization<T> {
    factors: Vec<(T, u32)>,
}

impl<T: Natural> Factorization<T> {
    /// Validates ordering, exponents and primality of every listed prime.
    pub fn from_factors(factors: Vec<(T, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidInput("primes must be strictly increasing".into()));
            }
        }
        for (p, e) in &factors {
            if *e == 0 {
                return Err(Error::InvalidInput(format!("prime {p} has exponent 0")));
            }
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
        }
        Ok(Factorization { factors })
    }

    pub fn factors(&self) -> &[(T, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &T> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Product of `prime^exponent` over all entries.
    pub fn value(&self) -> Result<T> {
        self.factors.iter().try_fold(T::one(), |acc, (p, e)| mul(&acc, &pow(p, *e)?))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// True when the factored number is a power (exponent >= 1) of `base` alone.
    pub fn is_power_of(&self, base: u64) -> bool {
        matches!(self.factors.as_slice(), [(p, _)] if *p == lit::<T>(base))
    }

    /// True when only the primes 2 and 3 occur.
    pub fn is_3_smooth(&self) -> bool {
        self.factors.iter().all(|(p, _)| *p == lit::<T>(2) || *p == lit::<T>(3))
    }
}

fn pow<T: Natural>(base: &T, exp: u32) -> Result<T> {
    (0..exp).try_fold(T::one(), |acc, _| mul(&acc, base))
}

/// Product of the distinct primes.
pub fn radical<T: Natural>(f: &Factorization<T>) -> Result<T> {
    f.primes().try_fold(T::one(), |acc, p| mul(&acc, p))
}

/// Euler's totient: product of `p^(e-1) * (p-1)`.
pub fn euler_phi<T: Natural>(f: &Factorization<T>) -> Result<T> {
    f.factors.iter().try_fold(T::one(), |acc, (p, e)| {
        let part = mul(&pow(p, e - 1)?, &(p.clone() - T::one()))?;
        mul(&acc, &part)
    })
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn default_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(DEFAULT_TRIAL_BOUND))
}

pub fn factorize<T: Natural>(n: &T) -> Result<Factorization<T>> {
    factorize_with(n, &Limits::default())
}

/// Trial division by primes up to `limits.trial_bound`, then Brent's rho with
/// a fixed seed on whatever cofactor remains.
pub fn factorize_with<T: Natural>(n: &T, limits: &Limits) -> Result<Factorization<T>> {
    if *n < lit(2) {
        return Err(Error::InvalidInput(format!("cannot factorize {n}; need n >= 2")));
    }
    let owned;
    let primes: &[u64] = if limits.trial_bound == DEFAULT_TRIAL_BOUND {
        default_primes()
    } else {
        owned = primes_up_to(limits.trial_bound);
        &owned
    };

    let mut rest = n.clone();
    let mut found: Vec<(T, u32)> = Vec::new();
    let mut rest_is_prime = false;
    for &p in primes {
        let Some(pt) = T::from_u64(p) else {
            break;
        };
        match pt.checked_mul(&pt) {
            Some(sq) if sq <= rest => {}
            _ => {
                rest_is_prime = true;
                break;
            }
        }
        let mut e = 0;
        while rest.is_multiple_of(&pt) {
            rest = rest / pt.clone();
            e += 1;
        }
        if e > 0 {
            found.push((pt, e));
        }
    }

    if !rest.is_one() {
        if rest_is_prime {
            found.push((rest, 1));
        } else {
            let mut budget = limits.rho_iterations;
            let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
            let mut pending = vec![rest];
            while let Some(m) = pending.pop() {
                if is_prime(&m) {
                    found.push((m, 1));
                    continue;
                }
                let d = rho_divisor(&m, &mut budget, &mut rng)?;
                let other = m / d.clone();
                pending.push(d);
                pending.push(other);
            }
        }
    }

    found.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(T, u32)> = Vec::with_capacity(found.len());
    for (p, e) in found {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization { factors: merged })
}

fn add_mod<T: Natural>(a: &T, b: &T, m: &T) -> T {
    // a, b < m
    let gap = m.clone() - b.clone();
    if *a >= gap {
        a.clone() - gap
    } else {
        a.clone() + b.clone()
    }
}

fn mul_mod<T: Natural>(a: &T, b: &T, m: &T) -> T {
    if let Some(p) = a.checked_mul(b) {
        return p % m.clone();
    }
    // double-and-add for products wider than T
    let two: T = lit(2);
    let mut result = T::zero();
    let mut base = a.clone() % m.clone();
    let mut k = b.clone();
    while !k.is_zero() {
        if k.is_odd() {
            result = add_mod(&result, &base, m);
        }
        base = add_mod(&base, &base, m);
        k = k / two.clone();
    }
    result
}

fn pow_mod<T: Natural>(base: &T, exp: &T, m: &T) -> T {
    let two: T = lit(2);
    let mut result = T::one() % m.clone();
    let mut b = base.clone() % m.clone();
    let mut e = exp.clone();
    while !e.is_zero() {
        if e.is_odd() {
            result = mul_mod(&result, &b, m);
        }
        b = mul_mod(&b, &b, m);
        e = e / two.clone();
    }
    result
}

/// Miller-Rabin over the first twelve prime bases. Deterministic below
/// 3.3 * 10^24; a strong probable-prime test above that.
pub fn is_prime<T: Natural>(n: &T) -> bool {
    if *n < lit(2) {
        return false;
    }
    for &b in &MR_BASES {
        let bt: T = lit(b);
        if *n == bt {
            return true;
        }
        if n.is_multiple_of(&bt) {
            return false;
        }
    }
    let one = T::one();
    let n_minus_1 = n.clone() - one.clone();
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d = d / lit(2);
        s += 1;
    }
    'bases: for &b in &MR_BASES {
        let mut x = pow_mod(&lit(b), &d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(&x, &x, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn abs_diff<T: Natural>(a: &T, b: &T) -> T {
    if a >= b {
        a.clone() - b.clone()
    } else {
        b.clone() - a.clone()
    }
}

/// A nontrivial divisor of the composite `n` (Brent's variant of rho).
fn rho_divisor<T: Natural>(n: &T, budget: &mut u64, rng: &mut ChaCha8Rng) -> Result<T> {
    if n.is_even() {
        return Ok(lit(2));
    }
    const BATCH: u64 = 128;
    let exhausted = || Error::FactorizationLimit { cofactor: n.to_string() };
    let one = T::one();
    loop {
        let c = T::from_u64(rng.gen::<u64>()).ok_or(Error::Overflow)? % (n.clone() - one.clone())
            + one.clone();
        let f = |v: &T| add_mod(&mul_mod(v, v, n), &(c.clone() % n.clone()), n);
        let mut y = T::from_u64(rng.gen::<u64>()).ok_or(Error::Overflow)? % n.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *budget < steps {
                    return Err(exhausted());
                }
                *budget -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    q = mul_mod(&q, &abs_diff(&x, &y), n);
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                if *budget == 0 {
                    return Err(exhausted());
                }
                *budget -= 1;
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Ok(g);
        }
    }
}

/// One step `q(i-1) = multiplier * quotient^2` of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainLevel<T> {
    /// `p(i)`: product of the primes with odd exponent in `q(i-1)`.
    pub multiplier: T,
    /// `q(i)`.
    pub quotient: T,
}

/// The chain `q(0) = q, q(i-1) = p(i) * q(i)^2`, stopped at the first `q(i) = 1`.
///
/// `levels[i - 1]` holds `(p(i), q(i))` for `i = 1..=N+1`, so the last level
/// always has quotient 1 and `q(N)` is its multiplier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecompositionChain<T> {
    modulus: T,
    levels: Vec<ChainLevel<T>>,
}

impl<T: Natural> DecompositionChain<T> {
    pub fn from_factorization(f: &Factorization<T>) -> Result<Self> {
        let modulus = f.value()?;
        if modulus < lit(2) {
            return Err(Error::InvalidInput("chain needs a modulus >= 2".into()));
        }
        let mut exps: Vec<u32> = f.factors.iter().map(|(_, e)| *e).collect();
        let mut levels = Vec::new();
        loop {
            let mut p = T::one();
            let mut q = T::one();
            for ((prime, _), e) in f.factors.iter().zip(exps.iter_mut()) {
                if *e % 2 == 1 {
                    p = mul(&p, prime)?;
                }
                *e /= 2;
                q = mul(&q, &pow(prime, *e)?)?;
            }
            let done = q.is_one();
            levels.push(ChainLevel { multiplier: p, quotient: q });
            if done {
                break;
            }
        }
        Ok(DecompositionChain { modulus, levels })
    }

    pub fn modulus(&self) -> &T {
        &self.modulus
    }

    pub fn levels(&self) -> &[ChainLevel<T>] {
        &self.levels
    }

    /// `N`: index of the last level with `q(N) > 1`.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// `q(i)` for `i` in `0..=N+1`.
    pub fn q(&self, i: usize) -> &T {
        if i == 0 {
            &self.modulus
        } else {
            &self.levels[i - 1].quotient
        }
    }

    /// `p(i)` for `i` in `1..=N+1`.
    pub fn p(&self, i: usize) -> &T {
        &self.levels[i - 1].multiplier
    }

    /// The square-free bottom of the chain, `q(N)`.
    pub fn terminal(&self) -> &T {
        self.q(self.depth())
    }

    /// Multipliers `p(i), p(i-1), ..., p(1)`: the folds that lift a fraction
    /// with denominator `q(i)` back up to `q(0)`.
    pub fn lift_multipliers(&self, i: usize) -> Vec<T> {
        (1..=i).rev().map(|j| self.p(j).clone()).collect()
    }
}

pub fn decompose_chain<T: Natural>(q: &T) -> Result<DecompositionChain<T>> {
    decompose_chain_with(q, &Limits::default())
}

pub fn decompose_chain_with<T: Natural>(q: &T, limits: &Limits) -> Result<DecompositionChain<T>> {
    DecompositionChain::from_factorization(&factorize_with(q, limits)?)
}

/// Divisors of `d` not exceeding `bound`, ascending. Always contains 1.
pub fn small_divisors<T: Natural>(d: &T, bound: &T) -> Result<Vec<T>> {
    if d.is_zero() {
        return Err(Error::InvalidInput("small_divisors needs d >= 1".into()));
    }
    let mut divisors = vec![T::one()];
    if !d.is_one() {
        for (p, e) in factorize(d)?.factors {
            let mut grown = Vec::with_capacity(divisors.len() * (e as usize + 1));
            for m in &divisors {
                let mut acc = m.clone();
                grown.push(acc.clone());
                for _ in 0..e {
                    acc = mul(&acc, &p)?;
                    grown.push(acc.clone());
                }
            }
            divisors = grown;
        }
    }
    divisors.retain(|m| m <= bound);
    divisors.sort();
    if divisors.is_empty() {
        divisors.push(T::one());
    }
    Ok(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn fac(n: u64) -> Vec<(u64, u32)> {
        factorize(&n).unwrap().factors().to_vec()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&9u64, &20), 1);
        assert_eq!(gcd(&12u64, &18), 6);
        for q in 1..50u64 {
            assert_eq!(gcd(&q, &q), q);
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(fac(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(fac(54), vec![(2, 1), (3, 3)]);
        assert_eq!(fac(999_983), vec![(999_983, 1)]);
        assert_eq!(fac(2), vec![(2, 1)]);
    }

    #[test]
    fn factorize_rejects_small_input() {
        assert!(matches!(factorize(&1u64), Err(Error::InvalidInput(_))));
        assert!(matches!(factorize(&0u64), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rho_splits_products_of_large_primes() {
        // both factors above the trial-division bound
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(fac(p * q), vec![(p, 1), (q, 1)]);
        assert_eq!(fac(p * p * q), vec![(p, 2), (q, 1)]);
        let big = BigUint::from(p) * BigUint::from(q) * BigUint::from(4_294_967_311u64);
        let f = factorize(&big).unwrap();
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.value().unwrap(), big);
    }

    #[test]
    fn exhausted_rho_names_the_cofactor() {
        let limits = Limits { trial_bound: 100, rho_iterations: 1, oracle_limit: 0 };
        let n = 1_000_003u64 * 1_000_033;
        match factorize_with(&n, &limits) {
            Err(Error::FactorizationLimit { cofactor }) => assert_eq!(cofactor, n.to_string()),
            other => panic!("expected limit error, got {other:?}"),
        }
    }

    #[test]
    fn small_trial_bound_still_factors() {
        let limits = Limits { trial_bound: 10, ..Limits::default() };
        let f = factorize_with(&(97u64 * 89 * 89), &limits).unwrap();
        assert_eq!(f.factors(), &[(89, 2), (97, 1)]);
    }

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_up_to(10_000);
        let from_mr: Vec<u64> = (0..=10_000u64).filter(is_prime).collect();
        assert_eq!(sieve, from_mr);
        // strong pseudoprime to bases 2..=11
        assert!(!is_prime(&3_215_031_751u64));
        assert!(is_prime(&18_446_744_073_709_551_557u64));
        assert!(is_prime(&4_294_967_311u64));
    }

    #[test]
    fn from_factors_validates() {
        assert!(Factorization::from_factors(vec![(3u64, 1), (2, 1)]).is_err());
        assert!(Factorization::from_factors(vec![(2u64, 0)]).is_err());
        assert!(Factorization::from_factors(vec![(4u64, 1)]).is_err());
        let f = Factorization::from_factors(vec![(2u64, 3), (3, 2), (5, 1)]).unwrap();
        assert_eq!(f.value().unwrap(), 360);
    }

    #[test]
    fn radical_and_phi_examples() {
        let r = |n: u64| radical(&factorize(&n).unwrap()).unwrap();
        let phi = |n: u64| euler_phi(&factorize(&n).unwrap()).unwrap();
        assert_eq!(r(360), 30);
        assert_eq!(r(12), 6);
        assert_eq!(r(7919), 7919);
        assert_eq!(phi(5), 4);
        assert_eq!(phi(6), 2);
        assert_eq!(phi(10), 4);
        assert_eq!(phi(360), 96);
    }

    #[test]
    fn phi_of_squarefree_at_least_four() {
        for q in 5..=100_000u64 {
            let f = factorize(&q).unwrap();
            if f.is_squarefree() && q != 6 {
                assert!(euler_phi(&f).unwrap() >= 4, "phi({q}) < 4");
            }
        }
    }

    fn levels(q: u64) -> (Vec<(u64, u64)>, usize) {
        let c = decompose_chain(&q).unwrap();
        (c.levels().iter().map(|l| (l.multiplier, l.quotient)).collect(), c.depth())
    }

    #[test]
    fn chain_examples() {
        assert_eq!(levels(360), (vec![(10, 6), (6, 1)], 1));
        assert_eq!(levels(48), (vec![(3, 4), (1, 2), (2, 1)], 2));
        assert_eq!(levels(30), (vec![(30, 1)], 0));
        assert_eq!(levels(2), (vec![(2, 1)], 0));
        let c = decompose_chain(&48u64).unwrap();
        assert_eq!(*c.terminal(), 2);
        assert_eq!(c.lift_multipliers(2), vec![1, 3]);
        assert_eq!(*c.q(0), 48);
    }

    fn check_chain(q: u64) {
        let f = factorize(&q).unwrap();
        let rad = radical(&f).unwrap();
        let c = DecompositionChain::from_factorization(&f).unwrap();
        for i in 1..=c.depth() + 1 {
            let (p, qi) = (*c.p(i), *c.q(i));
            assert_eq!(*c.q(i - 1), p * qi * qi, "q={q} level {i}");
            assert_eq!(rad % p, 0);
            assert!(p == 1 || factorize(&p).unwrap().is_squarefree());
        }
        assert_eq!(*c.q(c.depth() + 1), 1);
        assert!(*c.terminal() > 1);
        assert!(factorize(c.terminal()).unwrap().is_squarefree());
        assert_eq!(c.depth() == 0, f.is_squarefree());
    }

    #[test]
    fn chain_soundness_small_range() {
        for q in 2..=20_000u64 {
            check_chain(q);
        }
    }

    proptest! {
        #[test]
        fn chain_soundness_to_a_million(q in 2u64..=1_000_000) {
            check_chain(q);
        }

        #[test]
        fn factorization_reconstructs(n in 2u64..=u64::MAX / 2) {
            let f = factorize(&n).unwrap();
            prop_assert_eq!(f.value().unwrap(), n);
            for (p, _) in f.factors() {
                prop_assert!(is_prime(p));
            }
        }
    }

    #[test]
    fn small_divisor_examples() {
        assert_eq!(small_divisors(&30u64, &7).unwrap(), vec![1, 2, 3, 5, 6]);
        assert_eq!(small_divisors(&30u64, &1).unwrap(), vec![1]);
        assert_eq!(small_divisors(&6u64, &6).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(small_divisors(&1u64, &10).unwrap(), vec![1]);
    }

    #[test]
    fn generic_over_bigint() {
        let c = decompose_chain(&BigUint::from(360u32)).unwrap();
        assert_eq!(c.levels()[0].multiplier, BigUint::from(10u32));
        assert_eq!(*c.terminal(), BigUint::from(6u32));
    }
}

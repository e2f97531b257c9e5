//! q-integers, q-shifted factorials, q-binomial coefficients and cyclotomic
//! polynomials, plus factorizations of q-binomials into cyclotomic factors.
//!
//! Free functions compute from scratch. [`QContext`] memoizes the same values
//! for the evaluators; a context is single-threaded, so each worker owns one.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{QError, Result};
use crate::laurent::LaurentPoly;

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(QError::invalid(
            "q_int",
            format!("n = {n} must be positive"),
        ));
    }
    Ok(q_int_or_zero(n as usize))
}

/// `[n]` with `[0] = 0`.
pub(crate) fn q_int_or_zero(n: usize) -> LaurentPoly {
    LaurentPoly::from_i64s(0, &vec![1; n])
}

/// `(q;q)_n = (1 - q)(1 - q^2)...(1 - q^n)`.
pub fn q_pochhammer(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(QError::invalid(
            "q_pochhammer",
            format!("n = {n} must be non-negative"),
        ));
    }
    Ok((1..=n)
        .map(|i| LaurentPoly::one() - LaurentPoly::q_pow(i))
        .product())
}

/// `[n]! = [n][n-1]...[1]`.
pub fn q_factorial(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(QError::invalid(
            "q_factorial",
            format!("n = {n} must be non-negative"),
        ));
    }
    Ok((1..=n as usize).map(q_int_or_zero).product())
}

/// Gaussian binomial coefficient; zero unless `0 <= k <= n`.
///
/// Computed as the exact quotient `(q;q)_n / ((q;q)_k (q;q)_(n-k))`.
pub fn q_binomial(n: i64, k: i64) -> LaurentPoly {
    if n < 0 || k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k);
    // (q;q)_n / (q;q)_(n-k) = (1 - q^(n-k+1)) ... (1 - q^n)
    let num: LaurentPoly = (n - k + 1..=n)
        .map(|i| LaurentPoly::one() - LaurentPoly::q_pow(i))
        .product();
    let den = q_pochhammer(k).expect("k >= 0");
    num.exact_div(&den)
        .expect("q-binomial quotient of Pochhammer symbols is exact")
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn cyclotomic_with(d: u64, memo: &mut HashMap<u64, LaurentPoly>) -> LaurentPoly {
    if let Some(p) = memo.get(&d) {
        return p.clone();
    }
    let mut num = LaurentPoly::q_pow(d as i64) - LaurentPoly::one();
    let den: LaurentPoly = divisors(d)
        .into_iter()
        .filter(|&e| e < d)
        .map(|e| cyclotomic_with(e, memo))
        .product();
    num = num
        .exact_div(&den)
        .expect("q^d - 1 is divisible by the product of lower cyclotomics");
    memo.insert(d, num.clone());
    num
}

/// The cyclotomic polynomial `Phi_d(q)`.
pub fn cyclotomic(d: i64) -> Result<LaurentPoly> {
    if d < 1 {
        return Err(QError::invalid(
            "cyclotomic",
            format!("d = {d} must be positive"),
        ));
    }
    Ok(cyclotomic_with(d as u64, &mut HashMap::new()))
}

/// A product `prod_d Phi_d(q)^(e_d)` stored as the map `d -> e_d`, `e_d >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicFactorization {
    factors: BTreeMap<u64, u32>,
}

impl CyclotomicFactorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds from `(d, e)` pairs, merging repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut out = Self::default();
        for (d, e) in pairs {
            out.insert(d, e);
        }
        out
    }

    fn insert(&mut self, d: u64, e: u32) {
        if e > 0 {
            assert!(d >= 1, "cyclotomic index must be positive");
            *self.factors.entry(d).or_insert(0) += e;
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn exponent(&self, d: u64) -> u32 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies out the product.
    pub fn expand(&self) -> LaurentPoly {
        let mut memo = HashMap::new();
        self.factors
            .iter()
            .map(|(&d, &e)| cyclotomic_with(d, &mut memo).pow(e))
            .product()
    }

    /// Product of two factorizations: exponents add.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, &e) in &other.factors {
            out.insert(d, e);
        }
        out
    }

    /// Entrywise minimum of exponents. Exact because distinct cyclotomic
    /// polynomials are pairwise coprime.
    pub fn gcd(&self, other: &Self) -> Self {
        Self::from_pairs(
            self.factors
                .iter()
                .map(|(&d, &e)| (d, e.min(other.exponent(d)))),
        )
    }
}

/// Rendered as `Φ2^1·Φ3^1`; the empty product renders as `1`.
impl fmt::Display for CyclotomicFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(d, e)| format!("Φ{d}^{e}"))
            .collect();
        f.write_str(&parts.join("·"))
    }
}

/// Cyclotomic factorization of the q-binomial `[m choose k]`: the indices
/// `d <= m` with `floor(k/d) + floor((m-k)/d) < floor(m/d)`, each once.
pub fn q_binomial_cyclotomic(m: i64, k: i64) -> Result<CyclotomicFactorization> {
    if k < 0 || k > m {
        return Err(QError::invalid(
            "q_binomial_cyclotomic",
            format!("need 0 <= k <= m, got m = {m}, k = {k}"),
        ));
    }
    Ok(CyclotomicFactorization::from_pairs((1..=m).filter_map(
        |d| (k / d + (m - k) / d < m / d).then_some((d as u64, 1)),
    )))
}

/// `[n] = prod_{d | n, d > 1} Phi_d`.
pub fn q_int_factorization(n: i64) -> Result<CyclotomicFactorization> {
    if n < 1 {
        return Err(QError::invalid(
            "q_int_factorization",
            format!("n = {n} must be positive"),
        ));
    }
    Ok(CyclotomicFactorization::from_pairs(
        divisors(n as u64)
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| (d, 1)),
    ))
}

pub fn q_gcd(a: &CyclotomicFactorization, b: &CyclotomicFactorization) -> CyclotomicFactorization {
    a.gcd(b)
}

/// Memo tables for the values the evaluators ask for over and over.
///
/// Not `Sync`: parallel callers keep one context per worker.
#[derive(Default)]
pub struct QContext {
    binomials: RefCell<HashMap<(i64, i64), Rc<LaurentPoly>>>,
    q_ints: RefCell<HashMap<usize, Rc<LaurentPoly>>>,
    factorials: RefCell<HashMap<usize, Rc<LaurentPoly>>>,
    pochhammers: RefCell<HashMap<usize, Rc<LaurentPoly>>>,
    cyclotomics: RefCell<HashMap<u64, LaurentPoly>>,
    pub(crate) families: RefCell<HashMap<(u8, i64, i64), Rc<LaurentPoly>>>,
}

impl QContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Memoized [`q_binomial`]; total in `(n, k)`.
    pub fn binomial(&self, n: i64, k: i64) -> Rc<LaurentPoly> {
        if n < 0 || k < 0 || k > n {
            return Rc::new(LaurentPoly::zero());
        }
        let key = (n, k.min(n - k));
        if let Some(p) = self.binomials.borrow().get(&key) {
            return Rc::clone(p);
        }
        let p = Rc::new(q_binomial(key.0, key.1));
        self.binomials.borrow_mut().insert(key, Rc::clone(&p));
        p
    }

    /// `[n]` for `n >= 0`, with `[0] = 0`.
    pub fn q_int(&self, n: usize) -> Rc<LaurentPoly> {
        if let Some(p) = self.q_ints.borrow().get(&n) {
            return Rc::clone(p);
        }
        let p = Rc::new(q_int_or_zero(n));
        self.q_ints.borrow_mut().insert(n, Rc::clone(&p));
        p
    }

    pub fn factorial(&self, n: usize) -> Rc<LaurentPoly> {
        if let Some(p) = self.factorials.borrow().get(&n) {
            return Rc::clone(p);
        }
        let p = Rc::new(q_factorial(n as i64).expect("n >= 0"));
        self.factorials.borrow_mut().insert(n, Rc::clone(&p));
        p
    }

    /// Memoized `(q;q)_n`.
    pub fn pochhammer(&self, n: usize) -> Rc<LaurentPoly> {
        if let Some(p) = self.pochhammers.borrow().get(&n) {
            return Rc::clone(p);
        }
        let p = Rc::new(q_pochhammer(n as i64).expect("n >= 0"));
        self.pochhammers.borrow_mut().insert(n, Rc::clone(&p));
        p
    }

    pub fn cyclotomic(&self, d: u64) -> LaurentPoly {
        assert!(d >= 1, "cyclotomic index must be positive");
        cyclotomic_with(d, &mut self.cyclotomics.borrow_mut())
    }
}

//! Evaluators for the divisibility claims.
//!
//! Every evaluator builds its full numerator sum first and then performs a
//! single exact division by the closed-form denominator: divisibility holds
//! for the whole sum, not term by term. A failed division is returned as a
//! verdict inside [`Evaluation`], never as an error. Errors are reserved for
//! parameters outside an evaluator's domain, including half-integer exponents.
//!
//! Most sums share the kernel `[2k] [k]^(2r) q^(j k^2 - (r+1) k)` and run over
//! `k = 1..=n1`; bracket factors out of range vanish through the total
//! definition of the q-binomial, so the loops need no special cases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QError, Result};
use crate::laurent::{DivisionFailure, LaurentPoly};
use crate::qcore::{q_gcd, q_int_factorization, QContext};

/// A numerator, a denominator and the outcome of dividing one by the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    pub quotient: Result<LaurentPoly, DivisionFailure>,
}

impl Evaluation {
    fn divide(numerator: LaurentPoly, denominator: LaurentPoly) -> Self {
        let quotient = numerator.exact_div(&denominator);
        Evaluation {
            numerator,
            denominator,
            quotient,
        }
    }

    /// True if the denominator divides the numerator exactly.
    pub fn is_integral(&self) -> bool {
        self.quotient.is_ok()
    }

    pub fn quotient(&self) -> Option<&LaurentPoly> {
        self.quotient.as_ref().ok()
    }

    pub fn failure(&self) -> Option<&DivisionFailure> {
        self.quotient.as_ref().err()
    }
}

fn check(op: &'static str, ok: bool, reason: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(QError::invalid(op, reason()))
    }
}

fn positive(op: &'static str, name: &str, v: i64) -> Result<()> {
    check(op, v >= 1, || format!("{name} = {v} must be positive"))
}

fn non_negative(op: &'static str, name: &str, v: i64) -> Result<()> {
    check(op, v >= 0, || format!("{name} = {v} must be non-negative"))
}

fn all_positive(op: &'static str, ns: &[i64]) -> Result<()> {
    check(op, !ns.is_empty(), || "need at least one n_i".into())?;
    for &n in ns {
        positive(op, "n_i", n)?;
    }
    Ok(())
}

/// `numer / 2` when `numer` is even.
fn half(op: &'static str, numer: i64) -> Result<i64> {
    if numer % 2 == 0 {
        Ok(numer / 2)
    } else {
        Err(QError::Parity { op, numer })
    }
}

fn exponent(v: i64) -> u32 {
    u32::try_from(v).expect("exponent validated non-negative")
}

/// `[2k] [k]^power q^shift`.
fn kernel(ctx: &QContext, k: i64, power: i64, shift: i64) -> LaurentPoly {
    let k = k as usize;
    (&*ctx.q_int(2 * k) * &ctx.q_int(k).pow(exponent(power))).shift(shift)
}

/// `[2k] [k]^(2r) q^(j k^2 - (r+1) k)`, the summand weight shared by the cyclic sums.
fn cyclic_kernel(ctx: &QContext, k: i64, r: i64, j: i64) -> LaurentPoly {
    kernel(ctx, k, 2 * r, j * k * k - (r + 1) * k)
}

fn gcd_of_q_ints(m: i64, n: i64) -> Result<LaurentPoly> {
    Ok(q_gcd(&q_int_factorization(m)?, &q_int_factorization(n)?).expand())
}

fn qi(ctx: &QContext, n: i64) -> LaurentPoly {
    (*ctx.q_int(n as usize)).clone()
}

fn fact(ctx: &QContext, n: i64) -> LaurentPoly {
    (*ctx.factorial(n as usize)).clone()
}

/// `S_r(n; q) = sum_{k=1}^{n} [2k][k]^(2r) q^((r+1)(n-k)) [2n choose n+k]`.
pub fn sum_s(ctx: &QContext, n: i64, r: i64) -> Result<LaurentPoly> {
    positive("sum_s", "n", n)?;
    non_negative("sum_s", "r", r)?;
    Ok((1..=n)
        .map(|k| kernel(ctx, k, 2 * r, (r + 1) * (n - k)) * &*ctx.binomial(2 * n, n + k))
        .sum())
}

/// `T_r(n; q)`: as [`sum_s`] with the extra weight `q^(k^2)`.
pub fn sum_t(ctx: &QContext, n: i64, r: i64) -> Result<LaurentPoly> {
    positive("sum_t", "n", n)?;
    non_negative("sum_t", "r", r)?;
    Ok((1..=n)
        .map(|k| kernel(ctx, k, 2 * r, (r + 1) * (n - k) + k * k) * &*ctx.binomial(2 * n, n + k))
        .sum())
}

/// `S_r(n)` (`j = 0`) or `T_r(n)` (`j = 1`) divided by `[n]^2 [2n choose n]`.
pub fn central_quotient(ctx: &QContext, n: i64, r: i64, j: i64) -> Result<Evaluation> {
    const OP: &str = "central_quotient";
    positive(OP, "n", n)?;
    positive(OP, "r", r)?;
    let numerator = match j {
        0 => sum_s(ctx, n, r)?,
        1 => sum_t(ctx, n, r)?,
        _ => return Err(QError::invalid(OP, format!("j = {j} must be 0 or 1"))),
    };
    let denominator = qi(ctx, n).pow(2) * &*ctx.binomial(2 * n, n);
    Ok(Evaluation::divide(numerator, denominator))
}

/// `C(a_1..a_l; k) = prod_i [a_i + a_(i+1) choose a_i + k]` with `a_(l+1) = a_1`.
pub fn product_c(ctx: &QContext, a: &[i64], k: i64) -> Result<LaurentPoly> {
    all_positive("product_c", a)?;
    Ok(cyclic_product(a, |x, y| {
        ctx.binomial(x + y, x + k).as_ref().clone()
    }))
}

fn cyclic_product(ns: &[i64], mut factor: impl FnMut(i64, i64) -> LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (i, &x) in ns.iter().enumerate() {
        let y = ns[(i + 1) % ns.len()];
        let f = factor(x, y);
        if f.is_zero() {
            return LaurentPoly::zero();
        }
        acc *= &f;
    }
    acc
}

/// The raw cyclic sum
/// `sum_{k=1}^{n1} [2k][k]^(2r) q^(j k^2 - (r+1) k) C(n_1..n_m; k)`.
pub fn cyclic_sum(ctx: &QContext, ns: &[i64], r: i64, j: i64) -> Result<LaurentPoly> {
    all_positive("cyclic_sum", ns)?;
    non_negative("cyclic_sum", "r", r)?;
    Ok((1..=ns[0])
        .map(|k| {
            let c = product_c(ctx, ns, k).expect("validated");
            if c.is_zero() {
                c
            } else {
                cyclic_kernel(ctx, k, r, j) * c
            }
        })
        .sum())
}

/// Cyclic sum divided by `[n_1] [n_1 + n_m choose n_1]`, for any integer `j`.
pub fn cyclic_quotient(ctx: &QContext, ns: &[i64], r: i64, j: i64) -> Result<Evaluation> {
    let numerator = cyclic_sum(ctx, ns, r, j)?;
    let (n1, nm) = (ns[0], ns[ns.len() - 1]);
    let denominator = qi(ctx, n1) * &*ctx.binomial(n1 + nm, n1);
    Ok(Evaluation::divide(numerator, denominator))
}

/// `sum_{k=1}^{n} (1+q^k) [k]^r B_{n,k}^s q^(j k^2 - (r+s+1) k / 2)` over
/// `[2n choose n]`. Requires `r + s` odd.
pub fn triangle_quotient(ctx: &QContext, n: i64, r: i64, s: i64, j: i64) -> Result<Evaluation> {
    const OP: &str = "triangle_quotient";
    positive(OP, "n", n)?;
    non_negative(OP, "r", r)?;
    positive(OP, "s", s)?;
    let half_weight = half(OP, r + s + 1)?;
    let mut numerator = LaurentPoly::zero();
    for k in 1..=n {
        let b = ctx.catalan_triangle_or_zero(n, k)?;
        let term = (LaurentPoly::one() + LaurentPoly::q_pow(k))
            * ctx.q_int(k as usize).pow(exponent(r))
            * b.pow(exponent(s));
        numerator += term.shift(j * k * k - half_weight * k);
    }
    let denominator = (*ctx.binomial(2 * n, n)).clone();
    Ok(Evaluation::divide(numerator, denominator))
}

/// Factorial form of the cyclic claim, with `n_(m+1) = 0` in the prefactor:
/// `[n_1-1]! prod_i [n_i+n_(i+1)]!/[2n_i]!` times
/// `sum_k [2k][k]^(2r) q^(j k^2-(r+1)k) prod_i [2n_i choose n_i+k]`.
pub fn factorial_form_quotient(ctx: &QContext, ns: &[i64], r: i64, j: i64) -> Result<Evaluation> {
    const OP: &str = "factorial_form_quotient";
    all_positive(OP, ns)?;
    non_negative(OP, "r", r)?;
    let sum: LaurentPoly = (1..=ns[0])
        .map(|k| {
            let prod: LaurentPoly = ns
                .iter()
                .map(|&n| (*ctx.binomial(2 * n, n + k)).clone())
                .product();
            if prod.is_zero() {
                prod
            } else {
                cyclic_kernel(ctx, k, r, j) * prod
            }
        })
        .sum();
    let mut prefactor = fact(ctx, ns[0] - 1);
    for (i, &n) in ns.iter().enumerate() {
        let next = ns.get(i + 1).copied().unwrap_or(0);
        prefactor *= &*ctx.factorial((n + next) as usize);
    }
    let denominator: LaurentPoly = ns.iter().map(|&n| fact(ctx, 2 * n)).product();
    Ok(Evaluation::divide(prefactor * sum, denominator))
}

/// `gcd([m],[n]) / ([m][n]) [m+n choose m]^(-1)` times
/// `sum_{k=1}^{m} [2k][k]^(2a) q^(j k^2-(a+1)k) [m+n choose m+k]^r [m+n choose n+k]^r`.
pub fn alternating_pair_quotient(
    ctx: &QContext,
    m: i64,
    n: i64,
    r: i64,
    a: i64,
    j: i64,
) -> Result<Evaluation> {
    const OP: &str = "alternating_pair_quotient";
    positive(OP, "m", m)?;
    positive(OP, "n", n)?;
    positive(OP, "r", r)?;
    non_negative(OP, "a", a)?;
    let e = exponent(r);
    let sum: LaurentPoly = (1..=m)
        .map(|k| {
            let b = &*ctx.binomial(m + n, m + k) * &*ctx.binomial(m + n, n + k);
            cyclic_kernel(ctx, k, a, j) * b.pow(e)
        })
        .sum();
    let numerator = gcd_of_q_ints(m, n)? * sum;
    let denominator = qi(ctx, m) * qi(ctx, n) * &*ctx.binomial(m + n, m);
    Ok(Evaluation::divide(numerator, denominator))
}

/// As [`alternating_pair_quotient`] with the product
/// `[l+m choose l+k]^r [m+n choose m+k]^r [n+l choose n+k]^r`.
pub fn triple_cycle_quotient(
    ctx: &QContext,
    l: i64,
    m: i64,
    n: i64,
    r: i64,
    a: i64,
    j: i64,
) -> Result<Evaluation> {
    const OP: &str = "triple_cycle_quotient";
    for (name, v) in [("l", l), ("m", m), ("n", n), ("r", r)] {
        positive(OP, name, v)?;
    }
    non_negative(OP, "a", a)?;
    let e = exponent(r);
    let sum: LaurentPoly = (1..=m)
        .map(|k| {
            let b = &*ctx.binomial(l + m, l + k)
                * &*ctx.binomial(m + n, m + k)
                * &*ctx.binomial(n + l, n + k);
            if b.is_zero() {
                b
            } else {
                cyclic_kernel(ctx, k, a, j) * b.pow(e)
            }
        })
        .sum();
    let numerator = gcd_of_q_ints(m, n)? * sum;
    let denominator = qi(ctx, m) * qi(ctx, n) * &*ctx.binomial(m + n, m);
    Ok(Evaluation::divide(numerator, denominator))
}

/// `1 / ([n][n+1]) [2n+1 choose n]^(-1)` times
/// `sum_k [2k][k]^(2a) q^(j k^2-(a+1)k) [2n+1 choose n+k+1]^r [2n+1 choose n+k]^r [2n choose n+k]^s`.
pub fn shifted_pair_quotient(
    ctx: &QContext,
    n: i64,
    r: i64,
    s: i64,
    a: i64,
    j: i64,
) -> Result<Evaluation> {
    const OP: &str = "shifted_pair_quotient";
    positive(OP, "n", n)?;
    positive(OP, "r", r)?;
    positive(OP, "s", s)?;
    non_negative(OP, "a", a)?;
    let sum: LaurentPoly = (1..=n)
        .map(|k| {
            let odd = &*ctx.binomial(2 * n + 1, n + k + 1) * &*ctx.binomial(2 * n + 1, n + k);
            let even = ctx.binomial(2 * n, n + k).pow(exponent(s));
            cyclic_kernel(ctx, k, a, j) * odd.pow(exponent(r)) * even
        })
        .sum();
    let denominator = qi(ctx, n) * qi(ctx, n + 1) * &*ctx.binomial(2 * n + 1, n);
    Ok(Evaluation::divide(sum, denominator))
}

/// `gcd([m],[n]) [m+n]! [m-1]! [n-1]! / ([2m]! [2n]!)` times
/// `sum_{k=1}^{m} [2k][k]^(2a) q^(j k^2-(a+1)k) [2m choose m+k]^r [2n choose n+k]^s`.
pub fn double_central_quotient(
    ctx: &QContext,
    m: i64,
    n: i64,
    r: i64,
    s: i64,
    a: i64,
    j: i64,
) -> Result<Evaluation> {
    const OP: &str = "double_central_quotient";
    for (name, v) in [("m", m), ("n", n), ("r", r), ("s", s)] {
        positive(OP, name, v)?;
    }
    non_negative(OP, "a", a)?;
    let sum: LaurentPoly = (1..=m)
        .map(|k| {
            let b = ctx.binomial(2 * m, m + k).pow(exponent(r))
                * ctx.binomial(2 * n, n + k).pow(exponent(s));
            if b.is_zero() {
                b
            } else {
                cyclic_kernel(ctx, k, a, j) * b
            }
        })
        .sum();
    let prefactor = gcd_of_q_ints(m, n)? * fact(ctx, m + n) * fact(ctx, m - 1) * fact(ctx, n - 1);
    let denominator = fact(ctx, 2 * m) * fact(ctx, 2 * n);
    Ok(Evaluation::divide(prefactor * sum, denominator))
}

/// The `m = 2n` instance of [`double_central_quotient`] in its reduced form:
/// `1 / [2n] [4n choose n]^(-1) sum_k [2k][k]^(2a) q^(j k^2-(a+1)k) [4n choose 2n+k]^r [2n choose n+k]^s`.
pub fn doubled_central_quotient(
    ctx: &QContext,
    n: i64,
    r: i64,
    s: i64,
    a: i64,
    j: i64,
) -> Result<Evaluation> {
    const OP: &str = "doubled_central_quotient";
    for (name, v) in [("n", n), ("r", r), ("s", s)] {
        positive(OP, name, v)?;
    }
    non_negative(OP, "a", a)?;
    let sum: LaurentPoly = (1..=n)
        .map(|k| {
            let b = ctx.binomial(4 * n, 2 * n + k).pow(exponent(r))
                * ctx.binomial(2 * n, n + k).pow(exponent(s));
            cyclic_kernel(ctx, k, a, j) * b
        })
        .sum();
    let denominator = qi(ctx, 2 * n) * &*ctx.binomial(4 * n, n);
    Ok(Evaluation::divide(sum, denominator))
}

/// `1 / [n] [2n choose n]^(-1) sum_{k=1}^{n} [2k][k]^(2a) q^(j k^2-(a+1)k) N_q(2n+1, n+k+1)^r`.
pub fn narayana_quotient(ctx: &QContext, n: i64, r: i64, a: i64, j: i64) -> Result<Evaluation> {
    const OP: &str = "narayana_quotient";
    positive(OP, "n", n)?;
    positive(OP, "r", r)?;
    non_negative(OP, "a", a)?;
    let mut sum = LaurentPoly::zero();
    for k in 1..=n {
        let nar = ctx.narayana(2 * n + 1, n + k + 1)?;
        sum += cyclic_kernel(ctx, k, a, j) * nar.pow(exponent(r));
    }
    let denominator = qi(ctx, n) * &*ctx.binomial(2 * n, n);
    Ok(Evaluation::divide(sum, denominator))
}

/// `[m+n]! [m]! [n]! / ([2m]! [2n]!)` times
/// `sum_{k=1}^{m} (1+q^k) [k]^r q^(j k^2 - (r+s+t+1) k / 2) B_{m,k}^s B_{n,k}^t`.
/// Requires `r + s + t` odd.
pub fn super_catalan_triangle_quotient(
    ctx: &QContext,
    m: i64,
    n: i64,
    r: i64,
    s: i64,
    t: i64,
    j: i64,
) -> Result<Evaluation> {
    const OP: &str = "super_catalan_triangle_quotient";
    for (name, v) in [("m", m), ("n", n), ("s", s), ("t", t)] {
        positive(OP, name, v)?;
    }
    non_negative(OP, "r", r)?;
    let half_weight = half(OP, r + s + t + 1)?;
    let mut sum = LaurentPoly::zero();
    for k in 1..=m {
        let bn = ctx.catalan_triangle_or_zero(n, k)?;
        if bn.is_zero() {
            continue;
        }
        let bm = ctx.catalan_triangle_or_zero(m, k)?;
        let term = (LaurentPoly::one() + LaurentPoly::q_pow(k))
            * ctx.q_int(k as usize).pow(exponent(r))
            * bm.pow(exponent(s))
            * bn.pow(exponent(t));
        sum += term.shift(j * k * k - half_weight * k);
    }
    let prefactor = fact(ctx, m + n) * fact(ctx, m) * fact(ctx, n);
    let denominator = fact(ctx, 2 * m) * fact(ctx, 2 * n);
    Ok(Evaluation::divide(prefactor * sum, denominator))
}

/// Cyclic sum with each bracket replaced by the adjacent pair
/// `[n_i+n_(i+1)+1 choose n_i+k] [n_i+n_(i+1)+1 choose n_i+k+1]`, over
/// `[n_1] [n_1+n_m choose n_1] prod_i [n_i+n_(i+1)+1]`.
pub fn narayana_cycle_quotient(ctx: &QContext, ns: &[i64], r: i64, j: i64) -> Result<Evaluation> {
    const OP: &str = "narayana_cycle_quotient";
    all_positive(OP, ns)?;
    non_negative(OP, "r", r)?;
    let sum: LaurentPoly = (1..=ns[0])
        .map(|k| {
            let prod = cyclic_product(ns, |x, y| {
                &*ctx.binomial(x + y + 1, x + k) * &*ctx.binomial(x + y + 1, x + k + 1)
            });
            if prod.is_zero() {
                prod
            } else {
                cyclic_kernel(ctx, k, r, j) * prod
            }
        })
        .sum();
    let (n1, nm) = (ns[0], ns[ns.len() - 1]);
    let mut denominator = qi(ctx, n1) * &*ctx.binomial(n1 + nm, n1);
    for (i, &x) in ns.iter().enumerate() {
        let y = ns[(i + 1) % ns.len()];
        denominator *= &*ctx.q_int((x + y + 1) as usize);
    }
    Ok(Evaluation::divide(sum, denominator))
}

/// `sum_{k=-n}^{n} (-1)^k q^(j k^2 + k(k-1)/2) N_q(2n+1, n+k+1)^r` over the
/// q-Catalan number `C_n(q)`.
pub fn alternating_narayana_quotient(ctx: &QContext, n: i64, r: i64, j: i64) -> Result<Evaluation> {
    const OP: &str = "alternating_narayana_quotient";
    positive(OP, "n", n)?;
    positive(OP, "r", r)?;
    let mut sum = LaurentPoly::zero();
    for k in -n..=n {
        let term = ctx
            .narayana(2 * n + 1, n + k + 1)?
            .pow(exponent(r))
            .shift(j * k * k + k * (k - 1) / 2);
        if k.is_odd() {
            sum -= &term;
        } else {
            sum += &term;
        }
    }
    Ok(Evaluation::divide(sum, ctx.catalan(n)?))
}

/// Integer version of the central claim at `q = 1`:
/// `2 / n^2 [2n choose n]^(-1) sum_k [2n choose n-k] k^(2r+1)`, if it is an integer.
pub fn integer_central_quotient(n: i64, r: i64) -> Option<BigInt> {
    let binom = |a: i64, b: i64| -> BigInt {
        if b < 0 || b > a {
            return BigInt::zero();
        }
        (0..b).fold(BigInt::one(), |acc, i| acc * (a - i) / (i + 1))
    };
    let sum: BigInt = (1..=n)
        .map(|k| binom(2 * n, n - k) * BigInt::from(k).pow(exponent(2 * r + 1)))
        .sum();
    let den = BigInt::from(n * n) * binom(2 * n, n);
    let (q, rem) = (sum * BigInt::from(2)).div_rem(&den);
    rem.is_zero().then_some(q)
}

/// Integer version of the cyclic claim at `q = 1`:
/// `2 / n_1 [n_1+n_m choose n_1]^(-1) sum_k k^(2r+1) prod_i [n_i+n_(i+1) choose n_i+k]`.
pub fn integer_cyclic_quotient(ns: &[i64], r: i64) -> Option<BigInt> {
    let binom = |a: i64, b: i64| -> BigInt {
        if b < 0 || b > a {
            return BigInt::zero();
        }
        (0..b).fold(BigInt::one(), |acc, i| acc * (a - i) / (i + 1))
    };
    let m = ns.len();
    let sum: BigInt = (1..=ns[0])
        .map(|k| {
            let prod: BigInt = (0..m)
                .map(|i| binom(ns[i] + ns[(i + 1) % m], ns[i] + k))
                .product();
            prod * BigInt::from(k).pow(exponent(2 * r + 1))
        })
        .sum();
    let den = BigInt::from(ns[0]) * binom(ns[0] + ns[m - 1], ns[0]);
    let (q, rem) = (sum * BigInt::from(2)).div_rem(&den);
    rem.is_zero().then_some(q)
}

/// The claims the evaluators can check.
///
/// Variant order is the report order. Wire names are the `as_str` values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaimId {
    CentralSum,
    CyclicSum,
    TriangleSum,
    AlternatingPair,
    TripleCycle,
    ShiftedPair,
    FactorialForm,
    DoubleCentral,
    NarayanaSum,
    SuperCatalanConjecture,
    NarayanaConjecture,
    CyclicConjecture,
    NarayanaCycleConjecture,
    AlternatingNarayana,
}

/// Which parameter slots a claim uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    /// Exact length of `ns`, or `None` for any length >= 1.
    pub ns_len: Option<usize>,
    pub r_min: i64,
    pub s: bool,
    pub t: bool,
    pub a: bool,
}

impl ClaimId {
    pub const ALL: [ClaimId; 14] = [
        ClaimId::CentralSum,
        ClaimId::CyclicSum,
        ClaimId::TriangleSum,
        ClaimId::AlternatingPair,
        ClaimId::TripleCycle,
        ClaimId::ShiftedPair,
        ClaimId::FactorialForm,
        ClaimId::DoubleCentral,
        ClaimId::NarayanaSum,
        ClaimId::SuperCatalanConjecture,
        ClaimId::NarayanaConjecture,
        ClaimId::CyclicConjecture,
        ClaimId::NarayanaCycleConjecture,
        ClaimId::AlternatingNarayana,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::CentralSum => "THM_1_1",
            ClaimId::CyclicSum => "THM_1_2",
            ClaimId::TriangleSum => "THM_1_3",
            ClaimId::AlternatingPair => "COR_5_1",
            ClaimId::TripleCycle => "COR_5_2",
            ClaimId::ShiftedPair => "COR_5_3",
            ClaimId::FactorialForm => "THM_5_4",
            ClaimId::DoubleCentral => "COR_5_5",
            ClaimId::NarayanaSum => "COR_5_5_NARAYANA",
            ClaimId::SuperCatalanConjecture => "CONJ_6_1",
            ClaimId::NarayanaConjecture => "CONJ_6_2",
            ClaimId::CyclicConjecture => "CONJ_6_3",
            ClaimId::NarayanaCycleConjecture => "CONJ_6_4",
            ClaimId::AlternatingNarayana => "CONG_5_2",
        }
    }

    /// Conjectures are checked over a caller-chosen `j` window; integrality is
    /// expected everywhere and non-negativity inside [`ClaimId::band`].
    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            ClaimId::SuperCatalanConjecture
                | ClaimId::NarayanaConjecture
                | ClaimId::CyclicConjecture
                | ClaimId::NarayanaCycleConjecture
        )
    }

    pub fn shape(self) -> Shape {
        let shape = |ns_len, r_min, s, t, a| Shape {
            ns_len,
            r_min,
            s,
            t,
            a,
        };
        match self {
            ClaimId::CentralSum => shape(Some(1), 1, false, false, false),
            ClaimId::CyclicSum
            | ClaimId::FactorialForm
            | ClaimId::CyclicConjecture
            | ClaimId::NarayanaCycleConjecture => shape(None, 0, false, false, false),
            ClaimId::TriangleSum => shape(Some(1), 0, true, false, false),
            ClaimId::AlternatingPair => shape(Some(2), 1, false, false, true),
            ClaimId::TripleCycle => shape(Some(3), 1, false, false, true),
            ClaimId::ShiftedPair => shape(Some(1), 1, true, false, true),
            ClaimId::DoubleCentral => shape(Some(2), 1, true, false, true),
            ClaimId::NarayanaSum | ClaimId::NarayanaConjecture => {
                shape(Some(1), 1, false, false, true)
            }
            ClaimId::SuperCatalanConjecture => shape(Some(2), 0, true, true, false),
            ClaimId::AlternatingNarayana => shape(Some(1), 1, false, false, false),
        }
    }

    /// Parameter roles and the `j` band, for listings.
    pub fn signature(self) -> &'static str {
        match self {
            ClaimId::CentralSum => "ns=[n], r>=1, j in {0,1}",
            ClaimId::CyclicSum => "ns=[n_1..n_m], r>=0, 0<=j<=m",
            ClaimId::TriangleSum => "ns=[n], r>=0, s>=1, r+s odd, 0<=j<=s",
            ClaimId::AlternatingPair => "ns=[m,n], r>=1, a>=0, 0<=j<=2r",
            ClaimId::TripleCycle => "ns=[l,m,n], r>=1, a>=0, 0<=j<=3r",
            ClaimId::ShiftedPair => "ns=[n], r>=1, s>=1, a>=0, 0<=j<=2r+s",
            ClaimId::FactorialForm => "ns=[n_1..n_m], r>=0, 0<=j<=m",
            ClaimId::DoubleCentral => "ns=[m,n], r>=1, s>=1, a>=0, 0<=j<=r+s",
            ClaimId::NarayanaSum => "ns=[n], r>=1, a>=0, 0<=j<=2r",
            ClaimId::SuperCatalanConjecture => {
                "ns=[m,n], r>=0, s>=1, t>=1, r+s+t odd, any j; non-negative for 0<=j<=s+t"
            }
            ClaimId::NarayanaConjecture => "ns=[n], r>=1, a>=0, any j; non-negative for 0<=j<=2r",
            ClaimId::CyclicConjecture => "ns=[n_1..n_m], r>=0, any j; non-negative for 0<=j<=m",
            ClaimId::NarayanaCycleConjecture => {
                "ns=[n_1..n_m], r>=0, any j; non-negative for 0<=j<=2m"
            }
            ClaimId::AlternatingNarayana => "ns=[n], r>=1, 0<=j<=2r-1",
        }
    }

    /// The expression whose Laurent integrality is checked.
    pub fn description(self) -> &'static str {
        match self {
            ClaimId::CentralSum => {
                "1/([n]^2 C(2n,n)) sum_k [2k][k]^{2r} q^{(r+1)(n-k)+jk^2} C(2n,n+k) is a polynomial"
            }
            ClaimId::CyclicSum => {
                "1/([n1] C(n1+nm,n1)) sum_k [2k][k]^{2r} q^{jk^2-(r+1)k} prod_i C(n_i+n_{i+1},n_i+k)"
            }
            ClaimId::TriangleSum => {
                "C(2n,n)^{-1} sum_k (1+q^k)[k]^r B_{n,k}^s q^{jk^2-(r+s+1)k/2}"
            }
            ClaimId::AlternatingPair => {
                "gcd([m],[n])/([m][n]C(m+n,m)) sum_k [2k][k]^{2a} q^{jk^2-(a+1)k} C(m+n,m+k)^r C(m+n,n+k)^r"
            }
            ClaimId::TripleCycle => {
                "gcd([m],[n])/([m][n]C(m+n,m)) sum_k [2k][k]^{2a} q^{jk^2-(a+1)k} C(l+m,l+k)^r C(m+n,m+k)^r C(n+l,n+k)^r"
            }
            ClaimId::ShiftedPair => {
                "1/([n][n+1]C(2n+1,n)) sum_k [2k][k]^{2a} q^{jk^2-(a+1)k} C(2n+1,n+k+1)^r C(2n+1,n+k)^r C(2n,n+k)^s"
            }
            ClaimId::FactorialForm => {
                "[n1-1]! prod_i [n_i+n_{i+1}]!/[2n_i]! (n_{m+1}=0) sum_k [2k][k]^{2r} q^{jk^2-(r+1)k} prod_i C(2n_i,n_i+k)"
            }
            ClaimId::DoubleCentral => {
                "gcd([m],[n])[m+n]![m-1]![n-1]!/([2m]![2n]!) sum_k [2k][k]^{2a} q^{jk^2-(a+1)k} C(2m,m+k)^r C(2n,n+k)^s"
            }
            ClaimId::NarayanaSum => {
                "1/([n]C(2n,n)) sum_k [2k][k]^{2a} q^{jk^2-(a+1)k} N_q(2n+1,n+k+1)^r"
            }
            ClaimId::SuperCatalanConjecture => {
                "[m+n]![m]![n]!/([2m]![2n]!) sum_k (1+q^k)[k]^r q^{jk^2-(r+s+t+1)k/2} B_{m,k}^s B_{n,k}^t"
            }
            ClaimId::NarayanaConjecture => {
                "1/([n]C(2n,n)) sum_k [2k][k]^{2a} q^{jk^2-(a+1)k} N_q(2n+1,n+k+1)^r for any j"
            }
            ClaimId::CyclicConjecture => {
                "1/([n1] C(n1+nm,n1)) sum_k [2k][k]^{2r} q^{jk^2-(r+1)k} prod_i C(n_i+n_{i+1},n_i+k) for any j"
            }
            ClaimId::NarayanaCycleConjecture => {
                "1/([n1]C(n1+nm,n1) prod_i [n_i+n_{i+1}+1]) sum_k [2k][k]^{2r} q^{jk^2-(r+1)k} prod_i C(n_i+n_{i+1}+1,n_i+k) C(n_i+n_{i+1}+1,n_i+k+1)"
            }
            ClaimId::AlternatingNarayana => {
                "sum_{k=-n}^{n} (-1)^k q^{jk^2+k(k-1)/2} N_q(2n+1,n+k+1)^r is divisible by C_n(q)"
            }
        }
    }

    /// Inclusive `j` band: the proved range for theorems, the predicted
    /// non-negativity range for conjectures.
    pub fn band(self, p: &ParamTuple) -> (i64, i64) {
        let m = p.ns.len() as i64;
        let s = p.s.unwrap_or(0);
        let t = p.t.unwrap_or(0);
        match self {
            ClaimId::CentralSum => (0, 1),
            ClaimId::CyclicSum | ClaimId::FactorialForm | ClaimId::CyclicConjecture => (0, m),
            ClaimId::TriangleSum => (0, s),
            ClaimId::AlternatingPair | ClaimId::NarayanaSum | ClaimId::NarayanaConjecture => {
                (0, 2 * p.r)
            }
            ClaimId::TripleCycle => (0, 3 * p.r),
            ClaimId::ShiftedPair => (0, 2 * p.r + s),
            ClaimId::DoubleCentral => (0, p.r + s),
            ClaimId::SuperCatalanConjecture => (0, s + t),
            ClaimId::NarayanaCycleConjecture => (0, 2 * m),
            ClaimId::AlternatingNarayana => (0, 2 * p.r - 1),
        }
    }

    /// Checks the parameter shape. Theorem claims also require `j` inside
    /// their band; parity violations come back as [`QError::Parity`].
    pub fn validate(self, p: &ParamTuple) -> Result<()> {
        let op = self.as_str();
        let shape = self.shape();
        if let Some(len) = shape.ns_len {
            check(op, p.ns.len() == len, || {
                format!("expected {len} entries in ns, got {}", p.ns.len())
            })?;
        }
        all_positive(op, &p.ns)?;
        check(op, p.r >= shape.r_min, || {
            format!("r = {} must be >= {}", p.r, shape.r_min)
        })?;
        for (name, wanted, got) in [
            ("s", shape.s, p.s),
            ("t", shape.t, p.t),
            ("a", shape.a, p.a),
        ] {
            match (wanted, got) {
                (true, None) => {
                    return Err(QError::invalid(op, format!("missing parameter {name}")))
                }
                (false, Some(_)) => {
                    return Err(QError::invalid(op, format!("unexpected parameter {name}")))
                }
                _ => {}
            }
        }
        check(op, p.k.is_none(), || "unexpected parameter k".into())?;
        if let Some(a) = p.a {
            non_negative(op, "a", a)?;
        }
        for (name, v) in [("s", p.s), ("t", p.t)] {
            if let Some(v) = v {
                positive(op, name, v)?;
            }
        }
        match self {
            ClaimId::TriangleSum => {
                half(op, p.r + p.s.unwrap() + 1)?;
            }
            ClaimId::SuperCatalanConjecture => {
                half(op, p.r + p.s.unwrap() + p.t.unwrap() + 1)?;
            }
            _ => {}
        }
        if !self.is_conjecture() {
            let (lo, hi) = self.band(p);
            check(op, (lo..=hi).contains(&p.j), || {
                format!("j = {} outside the proved range {lo}..={hi}", p.j)
            })?;
        }
        Ok(())
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase();
        if wanted == "COR_5_6" {
            return Ok(ClaimId::DoubleCentral);
        }
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == wanted)
            .ok_or_else(|| QError::invalid("claim id", format!("unknown claim {s:?}")))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer parameters of one grid point. Field order is the sort order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParamTuple {
    pub ns: Vec<i64>,
    pub r: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    pub j: i64,
    /// Only used by identity checks, never by claims.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

impl ParamTuple {
    pub fn new(ns: Vec<i64>, r: i64, j: i64) -> Self {
        ParamTuple {
            ns,
            r,
            j,
            ..Default::default()
        }
    }

    pub fn with_s(mut self, s: i64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_t(mut self, t: i64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_a(mut self, a: i64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = Some(k);
        self
    }
}

/// `ns=1;2 r=0 s=1 j=2`.
impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ns: Vec<String> = self.ns.iter().map(|n| n.to_string()).collect();
        write!(f, "ns={} r={}", ns.join(";"), self.r)?;
        for (name, v) in [("s", self.s), ("t", self.t), ("a", self.a)] {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        write!(f, " j={}", self.j)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        Ok(())
    }
}

/// Outcome of one claim at one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimVerdict {
    pub evaluation: Evaluation,
    /// Whether the quotient has no negative coefficients; `None` without a quotient.
    pub nonneg: Option<bool>,
    /// Whether `j` lies in the claim's band.
    pub in_band: bool,
    /// Theorem-mode: the claimed polynomial (not only Laurent) shape is present.
    pub shape_ok: bool,
    pub conjecture: bool,
}

impl ClaimVerdict {
    pub fn is_integral(&self) -> bool {
        self.evaluation.is_integral()
    }

    /// Integrality everywhere; for conjectures also non-negativity inside the band.
    pub fn holds(&self) -> bool {
        let positivity_ok = !(self.conjecture && self.in_band) || self.nonneg == Some(true);
        self.is_integral() && self.shape_ok && positivity_ok
    }
}

/// Validates `params` against `claim` and evaluates it.
pub fn evaluate_claim(ctx: &QContext, claim: ClaimId, p: &ParamTuple) -> Result<ClaimVerdict> {
    claim.validate(p)?;
    let (m, n) = (p.ns[0], p.ns.get(1).copied().unwrap_or(0));
    let (s, t, a) = (p.s.unwrap_or(0), p.t.unwrap_or(0), p.a.unwrap_or(0));
    let evaluation = match claim {
        ClaimId::CentralSum => central_quotient(ctx, m, p.r, p.j)?,
        ClaimId::CyclicSum | ClaimId::CyclicConjecture => cyclic_quotient(ctx, &p.ns, p.r, p.j)?,
        ClaimId::TriangleSum => triangle_quotient(ctx, m, p.r, s, p.j)?,
        ClaimId::AlternatingPair => alternating_pair_quotient(ctx, m, n, p.r, a, p.j)?,
        ClaimId::TripleCycle => triple_cycle_quotient(ctx, p.ns[0], p.ns[1], p.ns[2], p.r, a, p.j)?,
        ClaimId::ShiftedPair => shifted_pair_quotient(ctx, m, p.r, s, a, p.j)?,
        ClaimId::FactorialForm => factorial_form_quotient(ctx, &p.ns, p.r, p.j)?,
        ClaimId::DoubleCentral => double_central_quotient(ctx, m, n, p.r, s, a, p.j)?,
        ClaimId::NarayanaSum | ClaimId::NarayanaConjecture => {
            narayana_quotient(ctx, m, p.r, a, p.j)?
        }
        ClaimId::SuperCatalanConjecture => {
            super_catalan_triangle_quotient(ctx, m, n, p.r, s, t, p.j)?
        }
        ClaimId::NarayanaCycleConjecture => narayana_cycle_quotient(ctx, &p.ns, p.r, p.j)?,
        ClaimId::AlternatingNarayana => alternating_narayana_quotient(ctx, m, p.r, p.j)?,
    };
    let (lo, hi) = claim.band(p);
    let quotient = evaluation.quotient();
    let shape_ok = match (claim, quotient) {
        (ClaimId::CentralSum, Some(q)) => q.is_polynomial(),
        _ => true,
    };
    Ok(ClaimVerdict {
        nonneg: quotient.map(LaurentPoly::has_nonneg_coeffs),
        in_band: (lo..=hi).contains(&p.j),
        shape_ok,
        conjecture: claim.is_conjecture(),
        evaluation,
    })
}

/// Integrality and non-negativity of a conjecture at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub integral: bool,
    pub nonneg: Option<bool>,
    pub in_band: bool,
    pub quotient: Option<LaurentPoly>,
}

impl ConjectureVerdict {
    fn from_evaluation(evaluation: Evaluation, band: (i64, i64), j: i64) -> Self {
        let quotient = evaluation.quotient.ok();
        ConjectureVerdict {
            integral: quotient.is_some(),
            nonneg: quotient.as_ref().map(LaurentPoly::has_nonneg_coeffs),
            in_band: (band.0..=band.1).contains(&j),
            quotient,
        }
    }

    /// What the conjecture predicts: integral, and non-negative inside the band.
    pub fn as_predicted(&self) -> bool {
        self.integral && (!self.in_band || self.nonneg == Some(true))
    }
}

/// Super-Catalan refinement of the alternating pair claim, any `j`.
pub fn super_catalan_conjecture(
    ctx: &QContext,
    m: i64,
    n: i64,
    r: i64,
    s: i64,
    t: i64,
    j: i64,
) -> Result<ConjectureVerdict> {
    let e = super_catalan_triangle_quotient(ctx, m, n, r, s, t, j)?;
    Ok(ConjectureVerdict::from_evaluation(e, (0, s + t), j))
}

/// The Narayana sum for any integer `j`.
pub fn narayana_conjecture(
    ctx: &QContext,
    n: i64,
    r: i64,
    a: i64,
    j: i64,
) -> Result<ConjectureVerdict> {
    let e = narayana_quotient(ctx, n, r, a, j)?;
    Ok(ConjectureVerdict::from_evaluation(e, (0, 2 * r), j))
}

/// The cyclic sum for any integer `j`.
pub fn cyclic_conjecture(ctx: &QContext, ns: &[i64], r: i64, j: i64) -> Result<ConjectureVerdict> {
    let e = cyclic_quotient(ctx, ns, r, j)?;
    Ok(ConjectureVerdict::from_evaluation(
        e,
        (0, ns.len() as i64),
        j,
    ))
}

/// The Narayana-pair cyclic sum for any integer `j`.
pub fn narayana_cycle_conjecture(
    ctx: &QContext,
    ns: &[i64],
    r: i64,
    j: i64,
) -> Result<ConjectureVerdict> {
    let e = narayana_cycle_quotient(ctx, ns, r, j)?;
    Ok(ConjectureVerdict::from_evaluation(
        e,
        (0, 2 * ns.len() as i64),
        j,
    ))
}

/// A corollary claim rewritten as an instance of a generic claim.
///
/// The two expression values differ by the rational factor
/// `ratio_num / ratio_den`: `corollary = generic * ratio_num / ratio_den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub generic: ClaimId,
    pub params: ParamTuple,
    pub ratio_num: LaurentPoly,
    pub ratio_den: LaurentPoly,
}

/// The generic instance behind a corollary, or `None` for claims that are
/// not specializations.
pub fn specialization(
    ctx: &QContext,
    claim: ClaimId,
    p: &ParamTuple,
) -> Result<Option<Specialization>> {
    claim.validate(p)?;
    let repeat = |block: &[i64], times: i64| -> Vec<i64> {
        (0..times).flat_map(|_| block.iter().copied()).collect()
    };
    let a = p.a.unwrap_or(0);
    let spec = match claim {
        ClaimId::AlternatingPair => {
            let (m, n) = (p.ns[0], p.ns[1]);
            Specialization {
                generic: ClaimId::CyclicSum,
                params: ParamTuple::new(repeat(&[m, n], p.r), a, p.j),
                ratio_num: gcd_of_q_ints(m, n)?,
                ratio_den: qi(ctx, n),
            }
        }
        ClaimId::TripleCycle => {
            let (l, m, n) = (p.ns[0], p.ns[1], p.ns[2]);
            Specialization {
                generic: ClaimId::CyclicSum,
                params: ParamTuple::new(repeat(&[l, m, n], p.r), a, p.j),
                ratio_num: gcd_of_q_ints(m, n)? * qi(ctx, l) * &*ctx.binomial(l + n, l),
                ratio_den: qi(ctx, m) * qi(ctx, n) * &*ctx.binomial(m + n, m),
            }
        }
        ClaimId::ShiftedPair => {
            let n = p.ns[0];
            let mut ns = repeat(&[n + 1, n], p.r);
            ns.extend(std::iter::repeat_n(n, p.s.unwrap() as usize));
            Specialization {
                generic: ClaimId::CyclicSum,
                params: ParamTuple::new(ns, a, p.j),
                ratio_num: LaurentPoly::one(),
                ratio_den: qi(ctx, n),
            }
        }
        ClaimId::DoubleCentral => {
            let (m, n) = (p.ns[0], p.ns[1]);
            let mut ns = repeat(&[m], p.r);
            ns.extend(repeat(&[n], p.s.unwrap()));
            Specialization {
                generic: ClaimId::FactorialForm,
                params: ParamTuple::new(ns, a, p.j),
                ratio_num: gcd_of_q_ints(m, n)?,
                ratio_den: qi(ctx, n),
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(spec))
}

/// Quotient-level agreement of a corollary with its generic instance:
/// `Q_corollary * ratio_den == Q_generic * ratio_num`. `None` when the claim
/// has no generic instance; `Some(false)` also when either quotient is missing.
pub fn specialization_agrees(
    ctx: &QContext,
    claim: ClaimId,
    p: &ParamTuple,
) -> Result<Option<bool>> {
    let Some(spec) = specialization(ctx, claim, p)? else {
        return Ok(None);
    };
    let own = evaluate_claim(ctx, claim, p)?;
    let generic = evaluate_claim(ctx, spec.generic, &spec.params)?;
    Ok(Some(
        match (own.evaluation.quotient(), generic.evaluation.quotient()) {
            (Some(qc), Some(qg)) => qc * &spec.ratio_den == qg * &spec.ratio_num,
            _ => false,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{q_binomial, q_int};
    use crate::qfamilies::{catalan_triangle, q_narayana};

    fn p(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    fn qint(n: i64) -> LaurentPoly {
        q_int(n).unwrap()
    }

    /// Term-by-term brute force of the central sums, built from free functions only.
    fn brute_central(n: i64, r: i64, j: i64) -> LaurentPoly {
        (1..=n)
            .map(|k| {
                qint(2 * k)
                    * qint(k).pow((2 * r) as u32)
                    * LaurentPoly::q_pow((r + 1) * (n - k) + j * k * k)
                    * q_binomial(2 * n, n + k)
            })
            .sum()
    }

    /// Brute force of the cyclic numerator.
    fn brute_cyclic(ns: &[i64], r: i64, j: i64) -> LaurentPoly {
        let m = ns.len();
        (1..=ns[0])
            .map(|k| {
                let mut t = qint(2 * k)
                    * qint(k).pow((2 * r) as u32)
                    * LaurentPoly::q_pow(j * k * k - (r + 1) * k);
                for i in 0..m {
                    t = t * q_binomial(ns[i] + ns[(i + 1) % m], ns[i] + k);
                }
                t
            })
            .sum()
    }

    #[test]
    fn closed_forms_of_s0_s1() {
        let ctx = QContext::new();
        for n in 1..=12 {
            let c = q_binomial(2 * n, n);
            assert_eq!(sum_s(&ctx, n, 0).unwrap(), qint(n) * &c, "S0 n={n}");
            assert_eq!(sum_s(&ctx, n, 1).unwrap(), qint(n).pow(2) * &c, "S1 n={n}");
        }
        assert_eq!(sum_s(&ctx, 1, 0).unwrap(), p(0, &[1, 1]));
    }

    #[test]
    fn t_is_reflected_s() {
        let ctx = QContext::new();
        for n in 1..=8 {
            for r in 0..=3 {
                let s = sum_s(&ctx, n, r).unwrap();
                let t = sum_t(&ctx, n, r).unwrap();
                assert_eq!(
                    t,
                    s.subst_q_inverse()
                        .shift(n * n + 2 * r * n + 2 * n - 2 * r - 1)
                );
                assert_eq!(t.eval_at_one(), s.eval_at_one());
            }
        }
        assert_eq!(sum_t(&ctx, 1, 0).unwrap(), p(1, &[1, 1]));
    }

    #[test]
    fn central_quotient_examples() {
        let ctx = QContext::new();
        assert_eq!(
            central_quotient(&ctx, 1, 1, 0).unwrap().quotient.unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            central_quotient(&ctx, 2, 1, 0).unwrap().quotient.unwrap(),
            LaurentPoly::one()
        );
        let e = central_quotient(&ctx, 2, 2, 0).unwrap();
        let brute = brute_central(2, 2, 0);
        let den = qint(2).pow(2) * q_binomial(4, 2);
        assert_eq!(e.numerator, brute);
        assert_eq!(e.quotient.clone().unwrap() * den, brute);
        assert!(e.quotient.unwrap().is_polynomial());
        assert!(central_quotient(&ctx, 2, 1, 2).is_err());
        assert!(central_quotient(&ctx, 2, 0, 0).is_err());
    }

    #[test]
    fn central_sums_match_brute_force() {
        let ctx = QContext::new();
        for n in 1..=7 {
            for r in 1..=3 {
                for j in 0..=1 {
                    assert_eq!(
                        central_quotient(&ctx, n, r, j).unwrap().numerator,
                        brute_central(n, r, j)
                    );
                }
            }
        }
    }

    #[test]
    fn product_c_examples() {
        let ctx = QContext::new();
        for n in 1..6 {
            for k in 0..=n {
                assert_eq!(product_c(&ctx, &[n], k).unwrap(), q_binomial(2 * n, n + k));
            }
        }
        assert_eq!(product_c(&ctx, &[1, 1], 1).unwrap(), LaurentPoly::one());
        assert_eq!(product_c(&ctx, &[2, 1], 1).unwrap(), p(0, &[1, 1, 1]));
        assert!(product_c(&ctx, &[], 1).is_err());
    }

    #[test]
    fn cyclic_examples() {
        let ctx = QContext::new();
        let e = cyclic_quotient(&ctx, &[1], 0, 0).unwrap();
        assert_eq!(e.quotient.unwrap(), LaurentPoly::q_pow(-1));
        let e = cyclic_quotient(&ctx, &[2, 1], 0, 1).unwrap();
        assert_eq!(e.numerator, brute_cyclic(&[2, 1], 0, 1));
        let den = qint(2) * q_binomial(3, 2);
        assert_eq!(e.quotient.unwrap() * den, brute_cyclic(&[2, 1], 0, 1));
    }

    #[test]
    fn cyclic_matches_brute_force() {
        let ctx = QContext::new();
        for ns in [vec![3], vec![2, 3], vec![3, 1, 2], vec![2, 2, 2, 1]] {
            for r in 0..=2 {
                for j in -1..=4 {
                    assert_eq!(
                        cyclic_sum(&ctx, &ns, r, j).unwrap(),
                        brute_cyclic(&ns, r, j)
                    );
                }
            }
        }
    }

    #[test]
    fn single_cycle_matches_central_with_weight_shift() {
        let ctx = QContext::new();
        for n in 1..=8 {
            for r in 1..=3 {
                for j in 0..=1 {
                    let q11 = central_quotient(&ctx, n, r, j).unwrap().quotient.unwrap();
                    let q12 = cyclic_quotient(&ctx, &[n], r, j).unwrap().quotient.unwrap();
                    assert_eq!(q12.shift((r + 1) * n), qint(n) * q11, "n={n} r={r} j={j}");
                }
            }
        }
    }

    #[test]
    fn triangle_examples() {
        let ctx = QContext::new();
        let e = triangle_quotient(&ctx, 1, 0, 1, 0).unwrap();
        assert_eq!(e.quotient.unwrap(), LaurentPoly::q_pow(-1));
        let e = triangle_quotient(&ctx, 2, 1, 2, 1).unwrap();
        // brute force from the free-function triangle entries
        let brute: LaurentPoly = (1..=2)
            .map(|k| {
                (LaurentPoly::one() + LaurentPoly::q_pow(k))
                    * qint(k)
                    * catalan_triangle(2, k).unwrap().pow(2)
                    * LaurentPoly::q_pow(k * k - 2 * k)
            })
            .sum();
        assert_eq!(e.numerator, brute);
        assert!(e.is_integral());
        assert!(matches!(
            triangle_quotient(&ctx, 2, 1, 1, 0),
            Err(QError::Parity { .. })
        ));
    }

    #[test]
    fn factorial_form_equals_cyclic() {
        let ctx = QContext::new();
        for ns in [
            vec![1],
            vec![4],
            vec![2, 1],
            vec![1, 1],
            vec![3, 1, 2],
            vec![2, 3, 1, 2],
        ] {
            for r in 0..=2 {
                for j in 0..=ns.len() as i64 {
                    let a = factorial_form_quotient(&ctx, &ns, r, j)
                        .unwrap()
                        .quotient
                        .unwrap();
                    let b = cyclic_quotient(&ctx, &ns, r, j).unwrap().quotient.unwrap();
                    assert_eq!(a, b, "ns={ns:?} r={r} j={j}");
                }
            }
        }
        assert!(factorial_form_quotient(&ctx, &[1, 1], 0, 0)
            .unwrap()
            .is_integral());
    }

    #[test]
    fn corollary_examples() {
        let ctx = QContext::new();
        let e = alternating_pair_quotient(&ctx, 1, 1, 1, 0, 0).unwrap();
        assert_eq!(e.quotient.unwrap(), LaurentPoly::q_pow(-1));
        let e = narayana_quotient(&ctx, 1, 1, 0, 0).unwrap();
        assert_eq!(e.quotient.unwrap(), LaurentPoly::q_pow(-1));
        for n in 1..=4 {
            for r in 1..=2 {
                for s in 1..=2 {
                    for a in 0..=1 {
                        for j in 0..=r + s {
                            let e = doubled_central_quotient(&ctx, n, r, s, a, j).unwrap();
                            assert!(e.is_integral(), "n={n} r={r} s={s} a={a} j={j}");
                            let f = double_central_quotient(&ctx, 2 * n, n, r, s, a, j).unwrap();
                            assert_eq!(e.quotient, f.quotient);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pair_corollaries_are_symmetric() {
        let ctx = QContext::new();
        for m in 1..=4 {
            for n in 1..=4 {
                for r in 1..=2 {
                    for j in 0..=2 * r {
                        let a = alternating_pair_quotient(&ctx, m, n, r, 1, j).unwrap();
                        let b = alternating_pair_quotient(&ctx, n, m, r, 1, j).unwrap();
                        assert_eq!(a.quotient, b.quotient);
                    }
                    for s in 1..=2 {
                        let a = double_central_quotient(&ctx, m, n, r, s, 0, 1).unwrap();
                        let b = double_central_quotient(&ctx, n, m, s, r, 0, 1).unwrap();
                        assert_eq!(a.quotient, b.quotient);
                    }
                }
            }
        }
    }

    #[test]
    fn specializations_agree() {
        let ctx = QContext::new();
        let cases = [
            (
                ClaimId::AlternatingPair,
                ParamTuple::new(vec![2, 3], 2, 3).with_a(1),
            ),
            (
                ClaimId::TripleCycle,
                ParamTuple::new(vec![2, 3, 1], 1, 2).with_a(0),
            ),
            (
                ClaimId::TripleCycle,
                ParamTuple::new(vec![3, 2, 2], 2, 5).with_a(1),
            ),
            (
                ClaimId::ShiftedPair,
                ParamTuple::new(vec![2], 1, 2).with_s(2).with_a(1),
            ),
            (
                ClaimId::DoubleCentral,
                ParamTuple::new(vec![3, 2], 2, 3).with_s(1).with_a(0),
            ),
        ];
        for (claim, params) in cases {
            assert_eq!(
                specialization_agrees(&ctx, claim, &params).unwrap(),
                Some(true),
                "{claim} {params}"
            );
        }
        let p = ParamTuple::new(vec![2], 1, 0);
        assert_eq!(
            specialization_agrees(&ctx, ClaimId::CyclicSum, &p).unwrap(),
            None
        );
    }

    #[test]
    fn conjecture_examples() {
        let ctx = QContext::new();
        let v = super_catalan_conjecture(&ctx, 1, 1, 0, 1, 2, 0).unwrap();
        assert!(v.integral && v.in_band && v.nonneg == Some(true));
        assert_eq!(v.quotient, Some(LaurentPoly::q_pow(-2)));
        assert!(super_catalan_conjecture(&ctx, 1, 1, 0, 1, 1, 0).is_err());
        let v = narayana_conjecture(&ctx, 1, 1, 0, -1).unwrap();
        assert!(v.integral && !v.in_band);
        assert!(cyclic_conjecture(&ctx, &[2, 1], 0, -2).unwrap().integral);
        assert!(narayana_cycle_conjecture(&ctx, &[2, 1], 1, 3)
            .unwrap()
            .as_predicted());
    }

    #[test]
    fn narayana_cycle_reduces_to_narayana_sum() {
        let ctx = QContext::new();
        for n in 1..=4 {
            for m in 1..=2 {
                for r in 0..=2 {
                    for j in -1..=2 * m + 1 {
                        let ns = vec![n; m as usize];
                        let a = narayana_cycle_quotient(&ctx, &ns, r, j).unwrap();
                        let b = narayana_quotient(&ctx, n, m, r, j).unwrap();
                        assert_eq!(a.quotient, b.quotient, "n={n} m={m} r={r} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn alternating_narayana_examples() {
        let ctx = QContext::new();
        // n = 1: -q N(3,1) + N(3,2) - q^(1+1) N(3,3) with j = 0 weights q^(k(k-1)/2)
        let e = alternating_narayana_quotient(&ctx, 1, 1, 0).unwrap();
        let hand = -(LaurentPoly::q_pow(1) * q_narayana(3, 1).unwrap()) + q_narayana(3, 2).unwrap()
            - q_narayana(3, 3).unwrap();
        assert_eq!(e.numerator, hand);
        assert_eq!(e.quotient.unwrap(), hand);
        assert!(alternating_narayana_quotient(&ctx, 2, 1, 1)
            .unwrap()
            .is_integral());
        assert!(alternating_narayana_quotient(&ctx, 2, 2, 3)
            .unwrap()
            .is_integral());
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
        }
        assert_eq!(
            "cor_5_6".parse::<ClaimId>().unwrap(),
            ClaimId::DoubleCentral
        );
        assert!("THM_9_9".parse::<ClaimId>().is_err());
    }

    #[test]
    fn validation() {
        let ok = ParamTuple::new(vec![3], 1, 1);
        assert!(ClaimId::CentralSum.validate(&ok).is_ok());
        assert!(ClaimId::CentralSum
            .validate(&ParamTuple::new(vec![3], 1, 2))
            .is_err());
        assert!(ClaimId::CentralSum
            .validate(&ParamTuple::new(vec![3, 1], 1, 0))
            .is_err());
        assert!(ClaimId::CentralSum.validate(&ok.clone().with_s(1)).is_err());
        assert!(matches!(
            ClaimId::TriangleSum.validate(&ParamTuple::new(vec![3], 1, 0).with_s(1)),
            Err(QError::Parity { .. })
        ));
        assert!(ClaimId::CyclicConjecture
            .validate(&ParamTuple::new(vec![3, 2], 0, -5))
            .is_ok());
        assert!(ClaimId::CyclicSum
            .validate(&ParamTuple::new(vec![3, 2], 0, 3))
            .is_err());
        assert!(ClaimId::CyclicSum
            .validate(&ParamTuple::new(vec![3, 0], 0, 1))
            .is_err());
        assert!(ClaimId::AlternatingNarayana
            .validate(&ParamTuple::new(vec![3], 2, 3))
            .is_ok());
        assert!(ClaimId::AlternatingNarayana
            .validate(&ParamTuple::new(vec![3], 2, 4))
            .is_err());
    }

    #[test]
    fn reciprocal_law_on_quotients() {
        let ctx = QContext::new();
        for ns in [vec![1, 1], vec![2, 1], vec![3, 2, 1], vec![2, 2, 3]] {
            for r in 0..=2 {
                let m = ns.len() as i64;
                let q0 = cyclic_quotient(&ctx, &ns, r, 0).unwrap().quotient.unwrap();
                let qm = cyclic_quotient(&ctx, &ns, r, m).unwrap().quotient.unwrap();
                let chain: i64 = ns.windows(2).map(|w| w[0] * w[1]).sum();
                assert_eq!(q0, qm.subst_q_inverse().shift(chain - ns[0] - 2 * r));
            }
        }
    }

    #[test]
    fn integer_shadows() {
        // n = 2, r = 1: 2/4 * 1/6 * (C(4,1) * 1 + C(4,0) * 8) = 1
        assert_eq!(integer_central_quotient(2, 1), Some(BigInt::from(1)));
        let ctx = QContext::new();
        for n in 1..=8 {
            for r in 1..=3 {
                let q = central_quotient(&ctx, n, r, 0).unwrap().quotient.unwrap();
                assert_eq!(Some(q.eval_at_one()), integer_central_quotient(n, r));
            }
        }
        let q = cyclic_quotient(&ctx, &[3, 2, 2], 1, 2)
            .unwrap()
            .quotient
            .unwrap();
        assert_eq!(
            Some(q.eval_at_one()),
            integer_cyclic_quotient(&[3, 2, 2], 1)
        );
    }

    #[test]
    fn verdict_logic() {
        let ctx = QContext::new();
        let v = evaluate_claim(&ctx, ClaimId::CentralSum, &ParamTuple::new(vec![4], 2, 1)).unwrap();
        assert!(v.holds() && v.is_integral() && v.in_band);
        let v = evaluate_claim(
            &ctx,
            ClaimId::CyclicConjecture,
            &ParamTuple::new(vec![2, 2], 0, 5),
        )
        .unwrap();
        assert!(!v.in_band);
        assert!(v.is_integral());
        assert!(v.holds());
    }
}

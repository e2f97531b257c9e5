//! Exact Laurent polynomials in one variable `q` with integer coefficients.
//!
//! Storage is dense: a lowest exponent plus a contiguous run of coefficients.
//! Coefficients live in machine words (`i64`, with `i128` intermediates)
//! while they fit, and are promoted to [`BigInt`] as soon as any value would
//! overflow. The representation is canonical in both regimes, so structural
//! equality is value equality.
//!
//! Multiplication is schoolbook, `O(d1 * d2)` coefficient products.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Coeffs {
    /// Every coefficient fits in an `i64`.
    Small(Vec<i64>),
    /// At least one coefficient does not fit in an `i64`.
    Big(Vec<BigInt>),
}

impl Coeffs {
    fn len(&self) -> usize {
        match self {
            Coeffs::Small(v) => v.len(),
            Coeffs::Big(v) => v.len(),
        }
    }

    fn to_big(&self) -> Vec<BigInt> {
        match self {
            Coeffs::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            Coeffs::Big(v) => v.clone(),
        }
    }

    fn get(&self, i: usize) -> BigInt {
        match self {
            Coeffs::Small(v) => BigInt::from(v[i]),
            Coeffs::Big(v) => v[i].clone(),
        }
    }
}

/// A finitely supported integer combination of powers `q^e`, `e` of any sign.
///
/// Invariants: the coefficient run has nonzero first and last entries, and the
/// zero polynomial is the empty run with `min_exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Coeffs,
}

/// Why an exact division in the integer Laurent ring did not go through.
///
/// This is a verdict, not a crash: "`den` does not divide `num`".
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DivisionFailure {
    /// Long division finished with a nonzero remainder.
    #[error("nonzero remainder {remainder}")]
    Remainder { remainder: LaurentPoly },
    /// A quotient coefficient would have to be a non-integer rational.
    #[error("non-integral quotient coefficient at q^{exponent}: {dividend} / {divisor_lead}")]
    NonIntegral {
        exponent: i64,
        dividend: BigInt,
        divisor_lead: BigInt,
    },
}

fn i128_to_coeffs(mut v: Vec<i128>) -> (usize, Coeffs) {
    let lead = v.iter().position(|c| *c != 0);
    let Some(lead) = lead else {
        return (0, Coeffs::Small(Vec::new()));
    };
    let tail = v.iter().rposition(|c| *c != 0).unwrap();
    v.truncate(tail + 1);
    v.drain(..lead);
    let small: Option<Vec<i64>> = v.iter().map(|&c| i64::try_from(c).ok()).collect();
    match small {
        Some(s) => (lead, Coeffs::Small(s)),
        None => (lead, Coeffs::Big(v.into_iter().map(BigInt::from).collect())),
    }
}

fn big_to_coeffs(mut v: Vec<BigInt>) -> (usize, Coeffs) {
    let lead = v.iter().position(|c| !c.is_zero());
    let Some(lead) = lead else {
        return (0, Coeffs::Small(Vec::new()));
    };
    let tail = v.iter().rposition(|c| !c.is_zero()).unwrap();
    v.truncate(tail + 1);
    v.drain(..lead);
    let small: Option<Vec<i64>> = v.iter().map(|c| c.to_i64()).collect();
    match small {
        Some(s) => (lead, Coeffs::Small(s)),
        None => (lead, Coeffs::Big(v)),
    }
}

impl LaurentPoly {
    fn from_i128(min_exp: i64, v: Vec<i128>) -> Self {
        let (lead, coeffs) = i128_to_coeffs(v);
        Self::assemble(min_exp, lead, coeffs)
    }

    fn from_big(min_exp: i64, v: Vec<BigInt>) -> Self {
        let (lead, coeffs) = big_to_coeffs(v);
        Self::assemble(min_exp, lead, coeffs)
    }

    fn assemble(min_exp: i64, lead: usize, coeffs: Coeffs) -> Self {
        if coeffs.len() == 0 {
            Self::zero()
        } else {
            LaurentPoly {
                min_exp: min_exp + lead as i64,
                coeffs,
            }
        }
    }

    /// Builds `sum coeffs[i] * q^(min_exp + i)`, trimming zeros at both ends.
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        Self::from_big(min_exp, coeffs)
    }

    /// Same as [`LaurentPoly::new`] for machine-word coefficients.
    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_i128(min_exp, coeffs.iter().map(|&c| c as i128).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Coeffs::Small(Vec::new()),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^e`; `c == 0` gives the zero polynomial.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_big(e, vec![c.into()])
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        LaurentPoly {
            min_exp: e,
            coeffs: Coeffs::Small(vec![1]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 0
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && matches!(&self.coeffs, Coeffs::Small(v) if v.as_slice() == [1])
    }

    /// Lowest exponent carrying a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    /// Number of stored coefficients, `degree - low_exp + 1`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.min_exp;
        if i < 0 || i >= self.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs.get(i as usize)
        }
    }

    /// The dense coefficient run starting at [`LaurentPoly::min_exp`].
    pub fn coeffs(&self) -> Vec<BigInt> {
        self.coeffs.to_big()
    }

    /// Nonzero terms as `(exponent, coefficient)` in increasing exponent.
    pub fn terms(&self) -> Vec<(i64, BigInt)> {
        self.coeffs()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.min_exp + i as i64, c))
            .collect()
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.min_exp >= 0
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Lowest exponent whose coefficient is negative, with that coefficient.
    pub fn first_negative(&self) -> Option<(i64, BigInt)> {
        let i = match &self.coeffs {
            Coeffs::Small(v) => v.iter().position(|&c| c < 0),
            Coeffs::Big(v) => v.iter().position(|c| c.is_negative()),
        }?;
        Some((self.min_exp + i as i64, self.coeffs.get(i)))
    }

    /// Value at `q = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        match &self.coeffs {
            Coeffs::Small(v) => {
                let s = v
                    .iter()
                    .try_fold(0i128, |acc, &c| acc.checked_add(c as i128));
                match s {
                    Some(s) => BigInt::from(s),
                    None => v.iter().map(|&c| BigInt::from(c)).sum(),
                }
            }
            Coeffs::Big(v) => v.iter().sum(),
        }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The substitution `q -> 1/q`: the coefficient of `q^e` moves to `q^-e`.
    pub fn subst_q_inverse(&self) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let coeffs = match &self.coeffs {
            Coeffs::Small(v) => Coeffs::Small(v.iter().rev().copied().collect()),
            Coeffs::Big(v) => Coeffs::Big(v.iter().rev().cloned().collect()),
        };
        LaurentPoly {
            min_exp: -deg,
            coeffs,
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / den` in the ring of integer Laurent polynomials.
    ///
    /// Long division runs from the top exponent down and stops once the
    /// quotient exponent would fall below `low_exp(self) - low_exp(den)`,
    /// which is the lowest exponent any exact quotient can have.
    ///
    /// # Panics
    ///
    /// Panics if `den` is zero.
    pub fn exact_div(&self, den: &LaurentPoly) -> Result<LaurentPoly, DivisionFailure> {
        assert!(!den.is_zero(), "exact_div: division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.len() < den.len() {
            return Err(DivisionFailure::Remainder {
                remainder: self.clone(),
            });
        }
        let q_min = self.min_exp - den.min_exp;
        if let (Coeffs::Small(n), Coeffs::Small(d)) = (&self.coeffs, &den.coeffs) {
            if let Some(res) = div_small(n, d, self.min_exp, q_min) {
                return res;
            }
        }
        div_big(
            &self.coeffs.to_big(),
            &den.coeffs.to_big(),
            self.min_exp,
            q_min,
        )
    }

    /// Canonical text form, terms in increasing exponent: `q^-1 + 2 + 3*q^2`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// `Some(result)` unless an intermediate overflowed `i128`.
fn div_small(
    num: &[i64],
    den: &[i64],
    num_min: i64,
    q_min: i64,
) -> Option<Result<LaurentPoly, DivisionFailure>> {
    let dl = den.len();
    let lead = *den.last().unwrap() as i128;
    let mut rem: Vec<i128> = num.iter().map(|&c| c as i128).collect();
    let mut quot = vec![0i128; num.len() - dl + 1];
    for i in (dl - 1..num.len()).rev() {
        let top = rem[i];
        if top == 0 {
            continue;
        }
        let qc = top.checked_div(lead)?;
        if top.checked_rem(lead)? != 0 {
            let exponent = q_min + (i - (dl - 1)) as i64;
            return Some(Err(DivisionFailure::NonIntegral {
                exponent,
                dividend: BigInt::from(top),
                divisor_lead: BigInt::from(lead),
            }));
        }
        let base = i + 1 - dl;
        quot[base] = qc;
        for (t, &dc) in den.iter().enumerate() {
            let p = qc.checked_mul(dc as i128)?;
            rem[base + t] = rem[base + t].checked_sub(p)?;
        }
    }
    if rem.iter().any(|&c| c != 0) {
        return Some(Err(DivisionFailure::Remainder {
            remainder: LaurentPoly::from_i128(num_min, rem),
        }));
    }
    Some(Ok(LaurentPoly::from_i128(q_min, quot)))
}

fn div_big(
    num: &[BigInt],
    den: &[BigInt],
    num_min: i64,
    q_min: i64,
) -> Result<LaurentPoly, DivisionFailure> {
    let dl = den.len();
    let lead = den.last().unwrap();
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dl + 1];
    for i in (dl - 1..num.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (qc, r) = rem[i].div_rem(lead);
        if !r.is_zero() {
            return Err(DivisionFailure::NonIntegral {
                exponent: q_min + (i - (dl - 1)) as i64,
                dividend: rem[i].clone(),
                divisor_lead: lead.clone(),
            });
        }
        let base = i + 1 - dl;
        for (t, dc) in den.iter().enumerate() {
            rem[base + t] -= &qc * dc;
        }
        quot[base] = qc;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(DivisionFailure::Remainder {
            remainder: LaurentPoly::from_big(num_min, rem),
        });
    }
    Ok(LaurentPoly::from_big(q_min, quot))
}

fn add_impl(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.min_exp.min(b.min_exp);
    let hi = a.degree().unwrap().max(b.degree().unwrap());
    let len = (hi - lo + 1) as usize;
    let oa = (a.min_exp - lo) as usize;
    let ob = (b.min_exp - lo) as usize;
    match (&a.coeffs, &b.coeffs) {
        (Coeffs::Small(x), Coeffs::Small(y)) => {
            let mut out = vec![0i128; len];
            for (i, &c) in x.iter().enumerate() {
                out[oa + i] = c as i128;
            }
            for (i, &c) in y.iter().enumerate() {
                if negate_b {
                    out[ob + i] -= c as i128;
                } else {
                    out[ob + i] += c as i128;
                }
            }
            LaurentPoly::from_i128(lo, out)
        }
        _ => {
            let mut out = vec![BigInt::zero(); len];
            for (i, c) in a.coeffs.to_big().into_iter().enumerate() {
                out[oa + i] = c;
            }
            for (i, c) in b.coeffs.to_big().into_iter().enumerate() {
                if negate_b {
                    out[ob + i] -= c;
                } else {
                    out[ob + i] += c;
                }
            }
            LaurentPoly::from_big(lo, out)
        }
    }
}

fn mul_small(x: &[i64], y: &[i64]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let a = a as i128;
        for (j, &b) in y.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(a * b as i128)?;
        }
    }
    Some(out)
}

fn mul_impl(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let min_exp = a.min_exp + b.min_exp;
    if let (Coeffs::Small(x), Coeffs::Small(y)) = (&a.coeffs, &b.coeffs) {
        if let Some(out) = mul_small(x, y) {
            return LaurentPoly::from_i128(min_exp, out);
        }
    }
    let x = a.coeffs.to_big();
    let y = b.coeffs.to_big();
    let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
    for (i, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, d) in y.iter().enumerate() {
            out[i + j] += c * d;
        }
    }
    LaurentPoly::from_big(min_exp, out)
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = match &self.coeffs {
            Coeffs::Small(v) if v.iter().all(|&c| c != i64::MIN) => {
                Coeffs::Small(v.iter().map(|c| -c).collect())
            }
            other => {
                return LaurentPoly::from_big(
                    self.min_exp,
                    other.to_big().into_iter().map(|c| -c).collect(),
                )
            }
        };
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs,
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_impl(self, rhs, false);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = add_impl(self, &rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_impl(self, rhs, true);
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = mul_impl(self, rhs);
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a LaurentPoly> for LaurentPoly {
    fn product<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, x| acc * x)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_i64s(0, &[c])
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match e.cmp(&0) {
                Ordering::Equal => None,
                _ if e == 1 => Some("q".to_string()),
                _ => Some(format!("q^{e}")),
            };
            match var {
                None => write!(f, "{mag}")?,
                Some(v) if mag.is_one() => f.write_str(&v)?,
                Some(v) => write!(f, "{mag}*{v}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Structured form `{min_exp, coeffs}` with coefficients as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        let mut s = serializer.serialize_struct("LaurentPoly", 2)?;
        s.serialize_field("min_exp", &self.min_exp)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

//! Proved identities used as independent cross-checks on the kernel.
//!
//! Each check evaluates both sides in full and compares canonical forms. A
//! nonzero residual anywhere is a kernel bug, not a mathematical finding.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QError, Result};
use crate::expressions::{cyclic_quotient, cyclic_sum, sum_s, ParamTuple};
use crate::laurent::LaurentPoly;
use crate::qcore::{q_binomial, q_binomial_cyclotomic, q_gcd, q_int_factorization, QContext};

/// Outcome of one identity check. `residual` is `lhs - rhs` for the first
/// sub-identity that failed, zero when everything holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub holds: bool,
    pub residual: LaurentPoly,
    /// Which sub-identity failed, if any.
    pub detail: Option<String>,
}

impl OracleOutcome {
    fn compare(lhs: &LaurentPoly, rhs: &LaurentPoly) -> Self {
        let residual = lhs - rhs;
        OracleOutcome {
            holds: residual.is_zero(),
            residual,
            detail: None,
        }
    }

    fn pass() -> Self {
        OracleOutcome {
            holds: true,
            residual: LaurentPoly::zero(),
            detail: None,
        }
    }

    fn failed(detail: impl Into<String>, residual: LaurentPoly) -> Self {
        OracleOutcome {
            holds: false,
            residual,
            detail: Some(detail.into()),
        }
    }

    fn labelled(mut self, label: impl FnOnce() -> String) -> Self {
        if !self.holds {
            self.detail = Some(label());
        }
        self
    }
}

fn require(op: &'static str, ok: bool, reason: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(QError::invalid(op, reason()))
    }
}

/// `(q;q)_top / prod (q;q)_b` for a term of a q-Pfaff-Saalschutz type sum.
/// `None` if any lower index is negative, where `1/(q;q)_n = 0`.
fn pochhammer_ratio(ctx: &QContext, top: i64, bottoms: &[i64]) -> Result<Option<LaurentPoly>> {
    if bottoms.iter().any(|&b| b < 0) || top < 0 {
        return Ok(None);
    }
    let den: LaurentPoly = bottoms
        .iter()
        .map(|&b| (*ctx.pochhammer(b as usize)).clone())
        .product();
    ctx.pochhammer(top as usize)
        .exact_div(&den)
        .map(Some)
        .map_err(|failure| QError::Division {
            op: "pochhammer_ratio",
            failure,
        })
}

/// Three-bracket q-Pfaff-Saalschutz summation:
/// `[n1+n2 choose n1+k][n2+n3 choose n2+k][n3+n1 choose n3+k]` against
/// `sum_s q^(s^2+2ks) (q;q)_(n1+n2+n3-k-s) / ((q;q)_s (q;q)_(s+2k) prod_i (q;q)_(n_i-k-s))`.
pub fn check_pfaff_saalschutz(
    ctx: &QContext,
    n1: i64,
    n2: i64,
    n3: i64,
    k: i64,
) -> Result<OracleOutcome> {
    const OP: &str = "check_pfaff_saalschutz";
    require(OP, n1 >= 1 && n2 >= 1 && n3 >= 1, || {
        format!("n = ({n1},{n2},{n3}) must be positive")
    })?;
    require(OP, 0 <= k && k <= n1.min(n2).min(n3), || {
        format!("k = {k} out of range")
    })?;
    let lhs = &*ctx.binomial(n1 + n2, n1 + k)
        * &*ctx.binomial(n2 + n3, n2 + k)
        * &*ctx.binomial(n3 + n1, n3 + k);
    let mut rhs = LaurentPoly::zero();
    for s in 0..=n1 - k {
        let bottoms = [s, s + 2 * k, n1 - k - s, n2 - k - s, n3 - k - s];
        if let Some(t) = pochhammer_ratio(ctx, n1 + n2 + n3 - k - s, &bottoms)? {
            rhs += t.shift(s * s + 2 * k * s);
        }
    }
    Ok(OracleOutcome::compare(&lhs, &rhs))
}

/// The two-bracket limit of the q-Pfaff-Saalschutz sum:
/// `[n1+n2 choose n1+k][n1+n2 choose n2+k]` against
/// `sum_s q^(s^2+2ks) (q;q)_(n1+n2) / ((q;q)_s (q;q)_(s+2k) (q;q)_(n1-k-s) (q;q)_(n2-k-s))`.
pub fn check_limit_identity(ctx: &QContext, n1: i64, n2: i64, k: i64) -> Result<OracleOutcome> {
    const OP: &str = "check_limit_identity";
    require(OP, n1 >= 1 && n2 >= 1, || {
        format!("n = ({n1},{n2}) must be positive")
    })?;
    require(OP, 0 <= k && k <= n1.min(n2), || {
        format!("k = {k} out of range")
    })?;
    let lhs = &*ctx.binomial(n1 + n2, n1 + k) * &*ctx.binomial(n1 + n2, n2 + k);
    let mut rhs = LaurentPoly::zero();
    for s in 0..=n1 - k {
        let bottoms = [s, s + 2 * k, n1 - k - s, n2 - k - s];
        if let Some(t) = pochhammer_ratio(ctx, n1 + n2, &bottoms)? {
            rhs += t.shift(s * s + 2 * k * s);
        }
    }
    Ok(OracleOutcome::compare(&lhs, &rhs))
}

/// `S_r(n) = [n]^2 S_(r-1)(n) - q^r [2n][2n-1] S_(r-1)(n-1)` with `S(0) = 0`,
/// and its per-term kernel
/// `[k]^2 [2n choose n+k] q^(n-k) = [n]^2 [2n choose n+k] - [2n][2n-1] [2n-2 choose n+k-1]`.
pub fn check_s_recurrence(ctx: &QContext, n: i64, r: i64) -> Result<OracleOutcome> {
    const OP: &str = "check_s_recurrence";
    require(OP, n >= 1 && r >= 1, || {
        format!("need n >= 1, r >= 1, got n = {n}, r = {r}")
    })?;
    let qn = ctx.q_int(n as usize);
    let top = &*ctx.q_int(2 * n as usize) * &*ctx.q_int(2 * n as usize - 1);
    for k in 1..=n {
        let c = ctx.binomial(2 * n, n + k);
        let lhs = (ctx.q_int(k as usize).pow(2) * &*c).shift(n - k);
        let rhs = qn.pow(2) * &*c - &top * &*ctx.binomial(2 * n - 2, n + k - 1);
        let out =
            OracleOutcome::compare(&lhs, &rhs).labelled(|| format!("kernel identity at k = {k}"));
        if !out.holds {
            return Ok(out);
        }
    }
    let lower = if n >= 2 {
        sum_s(ctx, n - 1, r - 1)?
    } else {
        LaurentPoly::zero()
    };
    let lhs = sum_s(ctx, n, r)?;
    let rhs = qn.pow(2) * sum_s(ctx, n, r - 1)? - (top * lower).shift(r);
    Ok(OracleOutcome::compare(&lhs, &rhs).labelled(|| "summed recurrence".into()))
}

/// The recurrences lowering `j` by one on the cyclic expression
/// `S(n_1..n_m; r, j)` (the quotient, not the raw sum):
/// for `m >= 3`,
/// `S(n_1..n_m; r, j) = sum_l q^(l^2) [n_1-1 choose l-1] [n_2+n_3 choose n_2-l] S(l, n_3..n_m; r, j-1)`;
/// for `m = 2`,
/// `S(n_1, n_2; r, j) = sum_l q^(l^2) [n_1-1 choose l-1] [n_2 choose l] S(l; r, j-1)`.
pub fn check_cycle_recurrence(ctx: &QContext, ns: &[i64], r: i64, j: i64) -> Result<OracleOutcome> {
    const OP: &str = "check_cycle_recurrence";
    require(OP, ns.len() >= 2, || {
        format!("need m >= 2, got {}", ns.len())
    })?;
    require(OP, ns.iter().all(|&n| n >= 1), || {
        format!("ns = {ns:?} must be positive")
    })?;
    require(OP, r >= 0 && j >= 1, || {
        format!("need r >= 0, j >= 1, got r = {r}, j = {j}")
    })?;
    let expression = |ns: &[i64], j: i64| -> Result<std::result::Result<LaurentPoly, String>> {
        let e = cyclic_quotient(ctx, ns, r, j)?;
        Ok(e.quotient
            .map_err(|f| format!("S({ns:?}; r={r}, j={j}) not integral: {f}")))
    };
    let lhs = match expression(ns, j)? {
        Ok(q) => q,
        Err(d) => return Ok(OracleOutcome::failed(d, LaurentPoly::zero())),
    };
    let n1 = ns[0];
    let mut rhs = LaurentPoly::zero();
    for l in 1..=n1 {
        let (second, inner): (LaurentPoly, Vec<i64>) = if ns.len() == 2 {
            ((*ctx.binomial(ns[1], l)).clone(), vec![l])
        } else {
            let mut inner = vec![l];
            inner.extend_from_slice(&ns[2..]);
            ((*ctx.binomial(ns[1] + ns[2], ns[1] - l)).clone(), inner)
        };
        let coeff = (&*ctx.binomial(n1 - 1, l - 1) * &second).shift(l * l);
        if coeff.is_zero() {
            continue;
        }
        let inner_value = match expression(&inner, j - 1)? {
            Ok(q) => q,
            Err(d) => return Ok(OracleOutcome::failed(d, LaurentPoly::zero())),
        };
        rhs += coeff * inner_value;
    }
    Ok(OracleOutcome::compare(&lhs, &rhs))
}

/// The `q -> 1/q` symmetry between `j = 0` and `j = m`, checked twice:
/// on the expression values,
/// `S(..; r, 0; q) = q^(n_1 n_2 + ... + n_(m-1) n_m - n_1 - 2r) S(..; r, m; 1/q)`,
/// and on the raw numerator sums, where the exponent becomes
/// `n_1 n_2 + ... + n_(m-1) n_m + n_m n_1 - 1 - 2r`.
pub fn check_reciprocal_symmetry(ctx: &QContext, ns: &[i64], r: i64) -> Result<OracleOutcome> {
    const OP: &str = "check_reciprocal_symmetry";
    require(OP, ns.len() >= 2, || {
        format!("need m >= 2, got {}", ns.len())
    })?;
    require(OP, r >= 0, || format!("r = {r} must be non-negative"))?;
    let m = ns.len() as i64;
    let chain: i64 = ns.windows(2).map(|w| w[0] * w[1]).sum();
    let cycle = chain + ns[ns.len() - 1] * ns[0];

    let raw0 = cyclic_sum(ctx, ns, r, 0)?;
    let raw_m = cyclic_sum(ctx, ns, r, m)?;
    let out = OracleOutcome::compare(&raw0, &raw_m.subst_q_inverse().shift(cycle - 1 - 2 * r))
        .labelled(|| "raw sums".into());
    if !out.holds {
        return Ok(out);
    }
    let e0 = cyclic_quotient(ctx, ns, r, 0)?;
    let em = cyclic_quotient(ctx, ns, r, m)?;
    match (e0.quotient, em.quotient) {
        (Ok(q0), Ok(qm)) => Ok(OracleOutcome::compare(
            &q0,
            &qm.subst_q_inverse().shift(chain - ns[0] - 2 * r),
        )
        .labelled(|| "expression values".into())),
        _ => Ok(OracleOutcome::failed(
            "expression not integral at j = 0 or j = m",
            LaurentPoly::zero(),
        )),
    }
}

/// `S_0(n) = [n][2n choose n]`, `S_1(n) = [n]^2 [2n choose n]`, and the
/// telescoping step
/// `[2k] q^(n-k) [2n choose n-k] = [n-k+1][2n choose n-k+1] - [n-k][2n choose n-k]`.
pub fn check_closed_forms(ctx: &QContext, n: i64) -> Result<OracleOutcome> {
    require("check_closed_forms", n >= 1, || {
        format!("n = {n} must be positive")
    })?;
    let central = ctx.binomial(2 * n, n);
    let qn = ctx.q_int(n as usize);
    let out = OracleOutcome::compare(&sum_s(ctx, n, 0)?, &(&*qn * &*central))
        .labelled(|| "S_0 closed form".into());
    if !out.holds {
        return Ok(out);
    }
    let out = OracleOutcome::compare(&sum_s(ctx, n, 1)?, &(qn.pow(2) * &*central))
        .labelled(|| "S_1 closed form".into());
    if !out.holds {
        return Ok(out);
    }
    for k in 1..=n {
        let lhs = (&*ctx.q_int(2 * k as usize) * &*ctx.binomial(2 * n, n - k)).shift(n - k);
        let rhs = &*ctx.q_int((n - k + 1) as usize) * &*ctx.binomial(2 * n, n - k + 1)
            - &*ctx.q_int((n - k) as usize) * &*ctx.binomial(2 * n, n - k);
        let out =
            OracleOutcome::compare(&lhs, &rhs).labelled(|| format!("telescoping step at k = {k}"));
        if !out.holds {
            return Ok(out);
        }
    }
    Ok(OracleOutcome::pass())
}

/// The floor-condition cyclotomic factorization of `[m choose k]` multiplies
/// back to the q-binomial.
pub fn check_cyclotomic_binomial(m: i64, k: i64) -> Result<OracleOutcome> {
    let f = q_binomial_cyclotomic(m, k)?;
    Ok(OracleOutcome::compare(&f.expand(), &q_binomial(m, k)))
}

/// `gcd([2n choose n], [n]) = 1`; the residual is `gcd - 1`.
pub fn check_central_coprime(n: i64) -> Result<OracleOutcome> {
    require("check_central_coprime", n >= 1, || {
        format!("n = {n} must be positive")
    })?;
    let g = q_gcd(&q_binomial_cyclotomic(2 * n, n)?, &q_int_factorization(n)?);
    Ok(OracleOutcome::compare(&g.expand(), &LaurentPoly::one()).labelled(|| format!("gcd = {g}")))
}

/// The identity checks runnable from a parameter grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OracleId {
    PfaffSaalschutz,
    LimitIdentity,
    SRecurrence,
    CycleRecurrence,
    ReciprocalSymmetry,
    ClosedForms,
    CyclotomicBinomial,
    CentralCoprime,
}

impl OracleId {
    pub const ALL: [OracleId; 8] = [
        OracleId::PfaffSaalschutz,
        OracleId::LimitIdentity,
        OracleId::SRecurrence,
        OracleId::CycleRecurrence,
        OracleId::ReciprocalSymmetry,
        OracleId::ClosedForms,
        OracleId::CyclotomicBinomial,
        OracleId::CentralCoprime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OracleId::PfaffSaalschutz => "PFAFF_SAALSCHUTZ",
            OracleId::LimitIdentity => "LIMIT_IDENTITY",
            OracleId::SRecurrence => "S_RECURRENCE",
            OracleId::CycleRecurrence => "CYCLE_RECURRENCE",
            OracleId::ReciprocalSymmetry => "RECIPROCAL_SYMMETRY",
            OracleId::ClosedForms => "CLOSED_FORMS",
            OracleId::CyclotomicBinomial => "CYCLOTOMIC_BINOMIAL",
            OracleId::CentralCoprime => "CENTRAL_COPRIME",
        }
    }

    pub fn signature(self) -> &'static str {
        match self {
            OracleId::PfaffSaalschutz => "ns=[n1,n2,n3], k in 0..=min(n_i)",
            OracleId::LimitIdentity => "ns=[n1,n2], k in 0..=min(n_i)",
            OracleId::SRecurrence => "ns=[n], r>=1",
            OracleId::CycleRecurrence => "ns=[n_1..n_m] (m>=2), r>=0, 1<=j<=m",
            OracleId::ReciprocalSymmetry => "ns=[n_1..n_m] (m>=2), r>=0",
            OracleId::ClosedForms => "ns=[n]",
            OracleId::CyclotomicBinomial => "ns=[m], k in 0..=m",
            OracleId::CentralCoprime => "ns=[n]",
        }
    }
}

impl fmt::Display for OracleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OracleId {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase();
        OracleId::ALL
            .into_iter()
            .find(|o| o.as_str() == wanted)
            .ok_or_else(|| QError::invalid("oracle id", format!("unknown oracle {s:?}")))
    }
}

impl Serialize for OracleId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for OracleId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Runs one oracle at a grid point; unused slots of `p` are ignored.
pub fn run_oracle(ctx: &QContext, id: OracleId, p: &ParamTuple) -> Result<OracleOutcome> {
    let arity = |n: usize| -> Result<()> {
        require(id.as_str(), p.ns.len() == n, || {
            format!("expected {n} entries in ns, got {}", p.ns.len())
        })
    };
    let k = || {
        p.k.ok_or_else(|| QError::invalid(id.as_str(), "missing parameter k"))
    };
    match id {
        OracleId::PfaffSaalschutz => {
            arity(3)?;
            check_pfaff_saalschutz(ctx, p.ns[0], p.ns[1], p.ns[2], k()?)
        }
        OracleId::LimitIdentity => {
            arity(2)?;
            check_limit_identity(ctx, p.ns[0], p.ns[1], k()?)
        }
        OracleId::SRecurrence => {
            arity(1)?;
            check_s_recurrence(ctx, p.ns[0], p.r)
        }
        OracleId::CycleRecurrence => check_cycle_recurrence(ctx, &p.ns, p.r, p.j),
        OracleId::ReciprocalSymmetry => check_reciprocal_symmetry(ctx, &p.ns, p.r),
        OracleId::ClosedForms => {
            arity(1)?;
            check_closed_forms(ctx, p.ns[0])
        }
        OracleId::CyclotomicBinomial => {
            arity(1)?;
            check_cyclotomic_binomial(p.ns[0], k()?)
        }
        OracleId::CentralCoprime => {
            arity(1)?;
            check_central_coprime(p.ns[0])
        }
    }
}

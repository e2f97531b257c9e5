//! Parameter grids: lexicographic products of inclusive integer ranges,
//! intersected with each check's domain.

use std::fmt;
use std::str::FromStr;

use qsums_core::{ClaimId, OracleId, ParamTuple};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::report::CheckId;

/// Inclusive integer range `lo..=hi`. Written `lo:hi` on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub const fn new(lo: i64, hi: i64) -> Self {
        IntRange { lo, hi }
    }

    /// Values `>= floor`, possibly none.
    fn from(self, floor: i64) -> std::ops::RangeInclusive<i64> {
        self.lo.max(floor)..=self.hi
    }

    fn intersect(self, other: IntRange) -> IntRange {
        IntRange::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for IntRange {
    type Err = HarnessError;

    /// `lo:hi` or a single value. Negative bounds are fine: `-2:6`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || HarnessError::usage(format!("malformed range {s:?}, expected lo:hi"));
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        match s.split_once(':') {
            Some((lo, hi)) => Ok(IntRange::new(parse(lo)?, parse(hi)?)),
            None => {
                let v = parse(s)?;
                Ok(IntRange::new(v, v))
            }
        }
    }
}

/// The requested ranges. Values outside a check's domain (e.g. `r = 0` for
/// a claim needing `r >= 1`) are dropped, not reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Values of each `n_i`.
    pub n: IntRange,
    /// Cycle lengths for claims taking any number of `n_i`.
    pub m: IntRange,
    pub r: IntRange,
    pub s: IntRange,
    pub t: IntRange,
    pub a: IntRange,
    /// `j` window. Theorems use their band intersected with this; conjectures
    /// default to `j_margin` past either end of their band.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IntRange>,
    #[serde(default = "default_margin")]
    pub j_margin: i64,
}

fn default_margin() -> i64 {
    CONJECTURE_MARGIN
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n: IntRange::new(1, 6),
            m: IntRange::new(1, 3),
            r: IntRange::new(0, 2),
            s: IntRange::new(1, 2),
            t: IntRange::new(1, 2),
            a: IntRange::new(0, 2),
            j: None,
            j_margin: CONJECTURE_MARGIN,
        }
    }
}

/// Default distance past the band for conjecture windows.
pub const CONJECTURE_MARGIN: i64 = 2;

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("n", Some(self.n)),
            ("m", Some(self.m)),
            ("r", Some(self.r)),
            ("s", Some(self.s)),
            ("t", Some(self.t)),
            ("a", Some(self.a)),
            ("j", self.j),
        ];
        for (name, range) in named {
            if let Some(range) = range {
                if range.lo > range.hi {
                    return Err(HarnessError::usage(format!(
                        "range {name} = {range} is empty (lo > hi)"
                    )));
                }
            }
        }
        if self.j_margin < 0 {
            return Err(HarnessError::usage(format!(
                "j margin {} must be non-negative",
                self.j_margin
            )));
        }
        Ok(())
    }

    fn ns_tuples(&self, len: Option<usize>, min_len: usize) -> Vec<Vec<i64>> {
        let lens: Vec<usize> = match len {
            Some(l) => vec![l],
            None => self.m.from(min_len as i64).map(|l| l as usize).collect(),
        };
        let values: Vec<i64> = self.n.from(1).collect();
        let mut out = Vec::new();
        for l in lens {
            out.extend(product(&values, l));
        }
        out
    }

    /// The `j` values evaluated for `claim` at a tuple with band `band`.
    pub fn j_range(&self, claim: ClaimId, band: (i64, i64)) -> IntRange {
        let band = IntRange::new(band.0, band.1);
        if claim.is_conjecture() {
            self.j.unwrap_or(IntRange::new(
                band.lo - self.j_margin,
                band.hi + self.j_margin,
            ))
        } else {
            self.j.map_or(band, |w| band.intersect(w))
        }
    }

    /// Every grid point of `claim`, in lexicographic order.
    pub fn claim_points(&self, claim: ClaimId) -> Vec<ParamTuple> {
        let shape = claim.shape();
        let opt = |wanted: bool, range: IntRange, floor: i64| -> Vec<Option<i64>> {
            if wanted {
                range.from(floor).map(Some).collect()
            } else {
                vec![None]
            }
        };
        let (ss, ts, as_) = (
            opt(shape.s, self.s, 1),
            opt(shape.t, self.t, 1),
            opt(shape.a, self.a, 0),
        );
        let mut points = Vec::new();
        for ns in self.ns_tuples(shape.ns_len, 1) {
            for r in self.r.from(shape.r_min) {
                for &s in &ss {
                    for &t in &ts {
                        for &a in &as_ {
                            let base = ParamTuple {
                                ns: ns.clone(),
                                r,
                                s,
                                t,
                                a,
                                j: 0,
                                k: None,
                            };
                            let js = self.j_range(claim, claim.band(&base));
                            for j in js.lo..=js.hi {
                                points.push(ParamTuple { j, ..base.clone() });
                            }
                        }
                    }
                }
            }
        }
        points.sort();
        points
    }

    /// Every grid point of an identity check, in lexicographic order.
    /// Parameters the identity does not use are fixed at zero.
    pub fn oracle_points(&self, oracle: OracleId) -> Vec<ParamTuple> {
        let at = |ns: Vec<i64>, r: i64, j: i64, k: Option<i64>| ParamTuple {
            ns,
            r,
            j,
            k,
            ..Default::default()
        };
        let with_k = |len: usize| -> Vec<ParamTuple> {
            self.ns_tuples(Some(len), len)
                .into_iter()
                .flat_map(|ns| {
                    let top = *ns.iter().min().unwrap();
                    (0..=top).map(move |k| at(ns.clone(), 0, 0, Some(k)))
                })
                .collect()
        };
        let mut points: Vec<ParamTuple> = match oracle {
            OracleId::PfaffSaalschutz => with_k(3),
            OracleId::LimitIdentity => with_k(2),
            OracleId::CyclotomicBinomial => self
                .n
                .from(1)
                .flat_map(|m| (0..=m).map(move |k| at(vec![m], 0, 0, Some(k))))
                .collect(),
            OracleId::SRecurrence => self
                .n
                .from(1)
                .flat_map(|n| self.r.from(1).map(move |r| at(vec![n], r, 0, None)))
                .collect(),
            OracleId::ClosedForms | OracleId::CentralCoprime => {
                self.n.from(1).map(|n| at(vec![n], 0, 0, None)).collect()
            }
            OracleId::CycleRecurrence => self
                .ns_tuples(None, 2)
                .into_iter()
                .flat_map(|ns| {
                    let m = ns.len() as i64;
                    self.r
                        .from(0)
                        .flat_map(move |r| {
                            let ns = ns.clone();
                            (1..=m).map(move |j| at(ns.clone(), r, j, None))
                        })
                        .collect::<Vec<_>>()
                })
                .collect(),
            OracleId::ReciprocalSymmetry => self
                .ns_tuples(None, 2)
                .into_iter()
                .flat_map(|ns| self.r.from(0).map(move |r| at(ns.clone(), r, 0, None)))
                .collect(),
        };
        points.sort();
        points
    }
}

/// All `len`-tuples over `values`, lexicographically.
fn product(values: &[i64], len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    if values.is_empty() && len > 0 {
        out.clear();
    }
    out
}

/// Sorted `(check, params)` pairs for the given checks.
pub fn claim_grid(
    claims: impl IntoIterator<Item = ClaimId>,
    grid: &GridSpec,
) -> Vec<(CheckId, ParamTuple)> {
    let mut claims: Vec<ClaimId> = claims.into_iter().collect();
    claims.sort();
    claims.dedup();
    claims
        .into_iter()
        .flat_map(|c| {
            grid.claim_points(c)
                .into_iter()
                .map(move |p| (CheckId::Claim(c), p))
        })
        .collect()
}

pub fn oracle_grid(
    oracles: impl IntoIterator<Item = OracleId>,
    grid: &GridSpec,
) -> Vec<(CheckId, ParamTuple)> {
    let mut oracles: Vec<OracleId> = oracles.into_iter().collect();
    oracles.sort();
    oracles.dedup();
    oracles
        .into_iter()
        .flat_map(|o| {
            grid.oracle_points(o)
                .into_iter()
                .map(move |p| (CheckId::Oracle(o), p))
        })
        .collect()
}

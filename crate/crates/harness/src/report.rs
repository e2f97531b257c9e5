//! Result records, reports and their JSON / CSV encodings.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qsums_core::{ClaimId, DivisionFailure, LaurentPoly, OracleId, ParamTuple, QError};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};
use crate::grid::GridSpec;

/// A claim or an identity check. Claims sort before identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Claim(ClaimId),
    Oracle(OracleId),
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Claim(c) => c.as_str(),
            CheckId::Oracle(o) => o.as_str(),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = QError;
    fn from_str(s: &str) -> std::result::Result<Self, QError> {
        s.parse::<ClaimId>()
            .map(CheckId::Claim)
            .or_else(|_| s.parse::<OracleId>().map(CheckId::Oracle))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Skipped => "skipped",
        }
    }
}

/// Shape of a quotient without its coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSummary {
    pub low_exp: Option<i64>,
    pub degree: Option<i64>,
    pub coefficient_count: usize,
    /// Decimal; the value at `q = 1` can exceed native integers.
    pub eval_at_one: String,
}

impl QuotientSummary {
    pub fn of(q: &LaurentPoly) -> Self {
        QuotientSummary {
            low_exp: q.low_exp(),
            degree: q.degree(),
            coefficient_count: q.len(),
            eval_at_one: q.eval_at_one().to_string(),
        }
    }
}

/// Polynomials longer than this are stored as a digest.
pub const WITNESS_FULL_LIMIT: usize = 50;
/// Coefficients kept from each end of a digested polynomial.
pub const WITNESS_EDGE: usize = 10;

/// A polynomial in a witness: in full, or its two ends plus a hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PolyRecord {
    Full(LaurentPoly),
    Digest {
        min_exp: i64,
        coefficient_count: usize,
        low_coeffs: Vec<String>,
        high_coeffs: Vec<String>,
        /// SHA-256 of the canonical text form.
        sha256: String,
    },
}

impl PolyRecord {
    pub fn of(p: &LaurentPoly) -> Self {
        if p.len() <= WITNESS_FULL_LIMIT {
            return PolyRecord::Full(p.clone());
        }
        let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        let n = coeffs.len();
        PolyRecord::Digest {
            min_exp: p.min_exp(),
            coefficient_count: n,
            low_coeffs: coeffs[..WITNESS_EDGE].to_vec(),
            high_coeffs: coeffs[n - WITNESS_EDGE..].to_vec(),
            sha256: sha256_hex(&p.to_text()),
        }
    }
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Long division left this remainder.
    Remainder { remainder: PolyRecord },
    /// A quotient coefficient would be `dividend / divisor_lead`.
    NonIntegral {
        exponent: i64,
        dividend: String,
        divisor_lead: String,
    },
    /// A polynomial was claimed but the quotient has negative powers.
    NegativePower { low_exp: i64 },
    /// First negative coefficient of a quotient predicted non-negative.
    NegativeCoefficient { exponent: i64, coefficient: String },
    /// An identity left a nonzero residual.
    Residual {
        #[serde(skip_serializing_if = "Option::is_none")]
        detail: Option<String>,
        residual: PolyRecord,
    },
}

impl Witness {
    pub fn division(failure: &DivisionFailure) -> Self {
        match failure {
            DivisionFailure::Remainder { remainder } => Witness::Remainder {
                remainder: PolyRecord::of(remainder),
            },
            DivisionFailure::NonIntegral {
                exponent,
                dividend,
                divisor_lead,
            } => Witness::NonIntegral {
                exponent: *exponent,
                dividend: dividend.to_string(),
                divisor_lead: divisor_lead.to_string(),
            },
        }
    }
}

/// One check at one grid point.
///
/// `status == Fails` implies a witness; `status == Holds` implies `integrality`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: CheckId,
    pub params: ParamTuple,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    /// Claims: the division was exact. Identities: the residual vanished.
    pub integrality: bool,
    pub nonneg: Option<bool>,
    /// Only meaningful for claims; outside their band this is informational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_band: Option<bool>,
    pub quotient_summary: Option<QuotientSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ClaimResult {
    pub fn skipped(claim: CheckId, params: ParamTuple, reason: impl Into<String>) -> Self {
        ClaimResult {
            claim,
            params,
            status: Status::Skipped,
            skip_reason: Some(reason.into()),
            integrality: false,
            nonneg: None,
            in_band: None,
            quotient_summary: None,
            witness: None,
            elapsed_ms: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn tally(results: &[ClaimResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                Status::Holds => s.holds += 1,
                Status::Fails => s.fails += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool_version: String,
    /// Seconds since the Unix epoch; absent in deterministic mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub checks: Vec<CheckId>,
    pub grid_spec: GridSpec,
    /// Grid points before `limit` was applied.
    pub total_grid_size: usize,
    pub limit: Option<usize>,
    pub results: Vec<ClaimResult>,
    pub summary: Summary,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.summary.fails > 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub const CSV_HEADER: [&str; 8] = [
    "claim",
    "params",
    "status",
    "integrality",
    "nonneg",
    "low_exp",
    "degree",
    "eval_at_one",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes `report` to `out`, or to stdout when `out` is `None`.
pub fn emit_report(report: &Report, format: Format, out: Option<&Path>) -> Result<()> {
    let path = out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf);
    let io_err = |source| HarnessError::Io {
        path: path.clone(),
        source,
    };
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(io_err)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, report).map_err(|source| {
                HarnessError::Json {
                    path: path.clone(),
                    source,
                }
            })?;
            sink.write_all(b"\n").map_err(io_err)?;
        }
        Format::Csv => {
            let csv_err = |source| HarnessError::Csv {
                path: path.clone(),
                source,
            };
            let mut w = csv::Writer::from_writer(&mut sink);
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in &report.results {
                let q = r.quotient_summary.as_ref();
                w.write_record([
                    r.claim.to_string(),
                    r.params.to_string(),
                    r.status.as_str().to_string(),
                    r.integrality.to_string(),
                    opt(r.nonneg),
                    opt(q.and_then(|q| q.low_exp)),
                    opt(q.and_then(|q| q.degree)),
                    opt(q.map(|q| q.eval_at_one.clone())),
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    sink.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<CheckId>().unwrap(), CheckId::Claim(c));
        }
        for o in OracleId::ALL {
            assert_eq!(o.as_str().parse::<CheckId>().unwrap(), CheckId::Oracle(o));
        }
        assert!("NOPE".parse::<CheckId>().is_err());
        assert!(
            CheckId::Claim(ClaimId::AlternatingNarayana)
                < CheckId::Oracle(OracleId::PfaffSaalschutz)
        );
    }

    #[test]
    fn short_polys_kept_whole() {
        let p = LaurentPoly::from_i64s(-1, &[1, 2, 3]);
        let json = serde_json::to_string(&PolyRecord::of(&p)).unwrap();
        assert_eq!(json, r#"{"min_exp":-1,"coeffs":["1","2","3"]}"#);
    }

    #[test]
    fn long_polys_digested() {
        let c: Vec<i64> = (1..=60).collect();
        let p = LaurentPoly::from_i64s(-5, &c);
        let PolyRecord::Digest {
            min_exp,
            coefficient_count,
            low_coeffs,
            high_coeffs,
            sha256,
        } = PolyRecord::of(&p)
        else {
            panic!("expected a digest");
        };
        assert_eq!((min_exp, coefficient_count), (-5, 60));
        assert_eq!(low_coeffs.first().map(String::as_str), Some("1"));
        assert_eq!(low_coeffs.len(), WITNESS_EDGE);
        assert_eq!(high_coeffs.last().map(String::as_str), Some("60"));
        assert_eq!(sha256.len(), 64);
        assert_eq!(sha256, sha256_hex(&p.to_text()));
        // boundary: exactly 50 coefficients stay whole
        let p50 = LaurentPoly::from_i64s(0, &c[..WITNESS_FULL_LIMIT]);
        assert!(matches!(PolyRecord::of(&p50), PolyRecord::Full(_)));
    }

    #[test]
    fn sha256_known_value() {
        assert_eq!(
            sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn division_witnesses() {
        let w = Witness::division(&DivisionFailure::NonIntegral {
            exponent: 3,
            dividend: 7.into(),
            divisor_lead: 2.into(),
        });
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"non_integral","exponent":3,"dividend":"7","divisor_lead":"2"}"#
        );
    }

    #[test]
    fn summary_counts() {
        let p = ParamTuple::new(vec![1], 1, 0);
        let id = CheckId::Claim(ClaimId::CentralSum);
        let mut r = vec![ClaimResult::skipped(id, p.clone(), "parity")];
        r.push(ClaimResult {
            status: Status::Holds,
            skip_reason: None,
            integrality: true,
            ..r[0].clone()
        });
        assert_eq!(
            Summary::tally(&r),
            Summary {
                holds: 1,
                fails: 0,
                skipped: 1
            }
        );
    }
}

//! Parallel evaluation of grid points.
//!
//! Each worker thread keeps its own memo tables; results are collected in
//! grid order, so the report never depends on scheduling.

use std::cell::RefCell;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use qsums_core::{evaluate_claim, run_oracle, ClaimId, OracleId, ParamTuple, QContext, QError};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::grid::{claim_grid, oracle_grid, GridSpec};
use crate::report::{
    CheckId, ClaimResult, PolyRecord, QuotientSummary, Report, Status, Summary, Witness,
};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `None` lets rayon pick.
    pub workers: Option<usize>,
    /// Drop wall-clock fields so identical grids give identical bytes.
    pub deterministic: bool,
    /// Keep only the first `limit` grid points in lexicographic order.
    pub limit: Option<usize>,
}

thread_local! {
    static CTX: RefCell<Option<QContext>> = const { RefCell::new(None) };
}

fn with_ctx<T>(f: impl FnOnce(&QContext) -> T) -> T {
    CTX.with(|cell| {
        let mut slot = cell.borrow_mut();
        f(slot.get_or_insert_with(QContext::new))
    })
}

pub fn evaluate_point(ctx: &QContext, check: CheckId, params: &ParamTuple) -> Result<ClaimResult> {
    match check {
        CheckId::Claim(claim) => evaluate_claim_point(ctx, claim, params),
        CheckId::Oracle(oracle) => evaluate_oracle_point(ctx, oracle, params),
    }
}

fn evaluation_error(check: CheckId, params: &ParamTuple, source: QError) -> HarnessError {
    HarnessError::Evaluation {
        check,
        params: Box::new(params.clone()),
        source: Box::new(source),
    }
}

fn evaluate_claim_point(
    ctx: &QContext,
    claim: ClaimId,
    params: &ParamTuple,
) -> Result<ClaimResult> {
    let check = CheckId::Claim(claim);
    let v = match evaluate_claim(ctx, claim, params) {
        Ok(v) => v,
        Err(e @ QError::Parity { .. }) => {
            return Ok(ClaimResult::skipped(check, params.clone(), e.to_string()))
        }
        Err(e) => return Err(evaluation_error(check, params, e)),
    };
    let quotient = v.evaluation.quotient();
    let witness = if let Some(failure) = v.evaluation.failure() {
        Some(Witness::division(failure))
    } else if !v.shape_ok {
        quotient
            .and_then(|q| q.low_exp())
            .map(|low_exp| Witness::NegativePower { low_exp })
    } else if v.conjecture && v.in_band && v.nonneg == Some(false) {
        quotient
            .and_then(|q| q.first_negative())
            .map(|(exponent, c)| Witness::NegativeCoefficient {
                exponent,
                coefficient: c.to_string(),
            })
    } else {
        None
    };
    let status = if v.holds() {
        Status::Holds
    } else {
        Status::Fails
    };
    debug_assert_eq!(status == Status::Fails, witness.is_some());
    Ok(ClaimResult {
        claim: check,
        params: params.clone(),
        status,
        skip_reason: None,
        integrality: v.is_integral(),
        nonneg: v.nonneg,
        in_band: Some(v.in_band),
        quotient_summary: quotient.map(QuotientSummary::of),
        witness,
        elapsed_ms: None,
    })
}

fn evaluate_oracle_point(
    ctx: &QContext,
    oracle: OracleId,
    params: &ParamTuple,
) -> Result<ClaimResult> {
    let check = CheckId::Oracle(oracle);
    let out = run_oracle(ctx, oracle, params).map_err(|e| evaluation_error(check, params, e))?;
    let witness = (!out.holds).then(|| Witness::Residual {
        detail: out.detail.clone(),
        residual: PolyRecord::of(&out.residual),
    });
    Ok(ClaimResult {
        claim: check,
        params: params.clone(),
        status: if out.holds {
            Status::Holds
        } else {
            Status::Fails
        },
        skip_reason: None,
        integrality: out.holds,
        nonneg: None,
        in_band: None,
        quotient_summary: None,
        witness,
        elapsed_ms: None,
    })
}

/// Evaluates `points` (already sorted) and assembles the report.
pub fn run_points(
    checks: Vec<CheckId>,
    grid: &GridSpec,
    mut points: Vec<(CheckId, ParamTuple)>,
    opts: &SweepOptions,
) -> Result<Report> {
    grid.validate()?;
    if opts.workers == Some(0) {
        return Err(HarnessError::usage("--workers must be positive"));
    }
    let total_grid_size = points.len();
    if let Some(limit) = opts.limit {
        points.truncate(limit);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| {
        HarnessError::usage(format!("cannot start {:?} workers: {e}", opts.workers))
    })?;
    let deterministic = opts.deterministic;
    let results: Vec<ClaimResult> = pool.install(|| {
        points
            .par_iter()
            .map(|(check, params)| {
                let start = Instant::now();
                let mut r = with_ctx(|ctx| evaluate_point(ctx, *check, params))?;
                if !deterministic {
                    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                }
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    debug_assert!(results
        .windows(2)
        .all(|w| (w[0].claim, &w[0].params) <= (w[1].claim, &w[1].params)));
    let generated_at_unix = (!deterministic).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    Ok(Report {
        tool_version: TOOL_VERSION.to_string(),
        generated_at_unix,
        checks,
        grid_spec: grid.clone(),
        total_grid_size,
        limit: opts.limit,
        summary: Summary::tally(&results),
        results,
    })
}

/// Evaluates every claim in `claims` over `grid`.
pub fn run_sweep(claims: &[ClaimId], grid: &GridSpec, opts: &SweepOptions) -> Result<Report> {
    grid.validate()?;
    let points = claim_grid(claims.iter().copied(), grid);
    let mut checks: Vec<CheckId> = claims.iter().map(|&c| CheckId::Claim(c)).collect();
    checks.sort();
    checks.dedup();
    run_points(checks, grid, points, opts)
}

/// Runs the identity checks in `which` over `grid`.
pub fn run_oracles(which: &[OracleId], grid: &GridSpec, opts: &SweepOptions) -> Result<Report> {
    grid.validate()?;
    let points = oracle_grid(which.iter().copied(), grid);
    let mut checks: Vec<CheckId> = which.iter().map(|&o| CheckId::Oracle(o)).collect();
    checks.sort();
    checks.dedup();
    run_points(checks, grid, points, opts)
}

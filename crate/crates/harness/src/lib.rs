//! Parameter-grid sweeps over the claims and identities of `qsums-core`,
//! with parallel evaluation and byte-stable reports.

pub mod cli;
pub mod error;
pub mod grid;
pub mod report;
pub mod sweep;

pub use error::{HarnessError, Result};
pub use grid::{GridSpec, IntRange};
pub use report::{emit_report, CheckId, ClaimResult, Format, Report, Status, Summary, Witness};
pub use sweep::{run_oracles, run_sweep, SweepOptions};

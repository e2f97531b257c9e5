//! Exact arithmetic for sums of q-binomial coefficients weighted by powers of
//! q-integers, and evaluators that decide whether such sums are divisible by
//! their closed-form denominators in the ring of integer Laurent polynomials.

pub mod error;
pub mod expressions;
pub mod laurent;
pub mod oracles;
pub mod qcore;
pub mod qfamilies;

pub use error::{QError, Result};
pub use expressions::{evaluate_claim, ClaimId, ClaimVerdict, Evaluation, ParamTuple};
pub use laurent::{DivisionFailure, LaurentPoly};
pub use oracles::{run_oracle, OracleId, OracleOutcome};
pub use qcore::{CyclotomicFactorization, QContext};

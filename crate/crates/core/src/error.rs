use crate::laurent::DivisionFailure;

/// Usage errors: arguments outside an operation's domain.
///
/// A failed divisibility check is *not* an error; evaluators report it as a
/// [`DivisionFailure`] inside their result. The `Division` variant only
/// appears where a division is guaranteed to be exact (q-binomials, the
/// named families), so hitting it means the kernel is broken.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("{op}: {reason}")]
    InvalidArgument { op: &'static str, reason: String },
    #[error("{op}: exponent {numer}/2 is not an integer (parity condition violated)")]
    Parity { op: &'static str, numer: i64 },
    #[error("{op}: division expected to be exact failed: {failure}")]
    Division {
        op: &'static str,
        failure: DivisionFailure,
    },
}

impl QError {
    pub(crate) fn invalid(op: &'static str, reason: impl Into<String>) -> Self {
        QError::InvalidArgument {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = QError> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors and semantic non-results produced by the library.
///
/// `NoExist` and `HypothesisFailed` are not faults: nonexistence of a
/// generalized inverse and a failed additivity hypothesis are meaningful
/// mathematical outcomes. They are carried as error variants so they
/// propagate cleanly through compound constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        context: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("mixed scalar backends in {0}")]
    BackendMismatch(&'static str),

    #[error("weight matrix is not hermitian")]
    NotHermitian,

    #[error("weight matrix is not invertible")]
    NotInvertible,

    #[error("matrix is not invertible")]
    Singular,

    #[error("{kind} does not exist: {reason}")]
    NoExist { kind: &'static str, reason: String },

    #[error("hypothesis failed: {0:?}")]
    HypothesisFailed(Vec<&'static str>),

    #[error("power m={m} must be at least the index k={k}")]
    PowerBelowIndex { m: usize, k: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal construction check failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn no_exist(kind: &'static str, reason: impl Into<String>) -> Self {
        Error::NoExist {
            kind,
            reason: reason.into(),
        }
    }

    /// True for the "inverse does not exist" outcome, as opposed to a
    /// usage or input fault.
    pub fn is_no_exist(&self) -> bool {
        matches!(self, Error::NoExist { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by construction, decoding and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two objects that must agree in size do not.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// An exponential-cost routine was asked for a size beyond its guard.
    #[error("{what} is limited to {limit}, got {actual}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// Two densities live on different quantization grids.
    #[error("quantization grids differ")]
    GridMismatch,

    /// A threshold search could not classify a channel parameter within its
    /// evaluation budget.
    #[error("convergence undecided at epsilon = {epsilon} after {levels} levels")]
    Undecided { epsilon: f64, levels: usize },

    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

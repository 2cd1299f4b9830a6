use std::io;

use thiserror::Error;

/// Errors produced by learners, generators, bound evaluators and the harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A gradient component fell outside `[-1, 1]` (or was not finite).
    #[error("gradient component {coord} at round {round} is {value}, outside [-1, 1]")]
    GradientOutOfRange { round: usize, coord: usize, value: f64 },

    /// Two points that must share a dimension did not.
    #[error("shape mismatch: expected dimension {expected}, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    /// Invalid parameters or grid specification.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A bound or construction whose hypotheses do not hold at the given arguments.
    #[error("not applicable: {0}")]
    Inapplicable(String),

    /// Exhaustive enumeration was requested for a length beyond the supported cap.
    #[error("exhaustive enumeration refused for T = {requested} (cap is {cap})")]
    EnumerationTooLarge { requested: u32, cap: u32 },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

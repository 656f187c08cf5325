use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested moment does not exist (gamma-function argument not positive).
    #[error("moment does not exist: {0}")]
    MomentUndefined(String),

    /// A first moment needed by the metric is infinite.
    #[error("metric diverges: {0}")]
    Divergent(String),

    /// ζ_s for s > 1 is infinite unless the first moments agree.
    #[error("means differ by {diff:e} (tolerance {tolerance:e}); zeta is infinite")]
    MeanMismatch { diff: f64, tolerance: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

use thiserror::Error;

/// Errors raised by the geometry, distribution and oracle layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A direction that is not on the open upper hemisphere.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// Valid geometry that an operation does not handle (non-convex sampling).
    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("evaluation budget of {budget} exceeded (best estimate {best}, error estimate {error_estimate})")]
    BudgetExceeded {
        budget: u64,
        best: f64,
        error_estimate: f64,
    },

    #[error("density {value} exceeds the rejection bound {bound} at ({x1}, {x2})")]
    InvalidBound {
        value: f64,
        bound: f64,
        x1: f64,
        x2: f64,
    },

    #[error("rejection acceptance rate {rate:e} is below 1e-6")]
    ImpracticalBound { rate: f64 },

    #[error("invalid binning: {0}")]
    InvalidBinning(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

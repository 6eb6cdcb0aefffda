use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The request lies outside what the implementation supports
    /// (level index too large, Airy argument out of range, ...).
    #[error("unsupported input: {0}")]
    Capability(String),

    /// The argument lies outside the window in which an approximation is defined.
    #[error("outside domain: {0}")]
    Domain(String),

    /// Adaptive quadrature or refinement did not reach the requested tolerance.
    #[error("no convergence: {what} (best estimate {best}, error estimate {error_estimate:e})")]
    NonConvergence {
        what: String,
        best: f64,
        error_estimate: f64,
    },

    /// Too few usable points for a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A diagnostic feature (spectral peak, hump, ...) was not found.
    #[error("diagnostic not found: {0}")]
    NotFound(String),

    /// Two independent routes to the same quantity disagree.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// Malformed reference data or configuration.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

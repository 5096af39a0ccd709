//! Error taxonomy shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `omega/T` must be strictly positive and finite.
    #[error("frequency-to-temperature ratio must be positive and finite, got {0}")]
    NonPositiveFrequencyRatio(f64),

    /// Parameter or argument outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated quantity could not reach the requested tail tolerance.
    #[error("truncation error: {context} (tail bound {tail:.3e} > tol {tol:.3e})")]
    Truncation { context: String, tail: f64, tol: f64 },

    /// The required occupation cutoff exceeds the configured ceiling.
    #[error("resource error: required n_max = {required} exceeds ceiling {ceiling}")]
    Resource { required: usize, ceiling: usize },

    /// An internal numerical routine failed or lost self-consistency.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Post-selection probability is numerically zero; no conditional state exists.
    #[error("empty post-selection: probability {probability:.3e} below support threshold")]
    EmptyPostselection { probability: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

//! CLI-side error wrapper and the exit-code contract:
//! 0 ok, 1 validation failure, 2 usage/domain error, 3 numerical trouble
//! (truncation, resource limits, empty post-selection).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] horizon_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                horizon_core::Error::Domain(_)
                | horizon_core::Error::NonPositiveFrequencyRatio(_) => 2,
                _ => 3,
            },
            CliError::Io(_) => 2,
            CliError::Config(_) => 2,
        }
    }
}

//! Error-to-exit-code mapping.
//!
//! The contract is scriptable: 0 success, 1 usage, 2 domain or data error,
//! 3 I/O failure. Usage errors never reach [`CliError`]; the argument
//! parser reports them directly.

use thiserror::Error;
use windcost_core::{CostError, IngestError, RegressionError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<CostError> for CliError {
    fn from(err: CostError) -> Self {
        CliError::Domain(err.to_string())
    }
}

impl From<RegressionError> for CliError {
    fn from(err: RegressionError) -> Self {
        CliError::Domain(err.to_string())
    }
}

impl From<IngestError> for CliError {
    fn from(err: IngestError) -> Self {
        if err.is_io() {
            CliError::Io(err.to_string())
        } else {
            CliError::Domain(err.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Io(format!("failed to write json: {err}"))
    }
}

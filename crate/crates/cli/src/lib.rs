//! Library side of the `windcost` binary: report types, command bodies and
//! the exit-code contract. Kept separate from `main` so integration tests
//! can compose the pieces the same way the binary does.

pub mod commands;
pub mod error;
pub mod report;

pub use error::{CliError, EXIT_DOMAIN, EXIT_IO, EXIT_OK, EXIT_USAGE};

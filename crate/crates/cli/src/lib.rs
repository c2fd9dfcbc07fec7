//! Command-line front end for the hypercycle library.

pub mod args;
pub mod commands;
pub mod instance;
pub mod report;
pub mod verify;

use thiserror::Error;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INCONSISTENCY: u8 = 3;

/// Default seed for `verify --random`.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Inconsistency(_) => EXIT_INCONSISTENCY,
        }
    }
}

impl From<hypercycle::Error> for CliError {
    fn from(e: hypercycle::Error) -> Self {
        match e {
            hypercycle::Error::InternalInconsistency(m) => CliError::Inconsistency(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

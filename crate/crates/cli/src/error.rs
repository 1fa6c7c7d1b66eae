//! CLI failure type and its mapping onto the process exit-code contract:
//! 0 success, 2 configuration/validation error, 3 data error, 4 internal
//! invariant violation.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Unusable configuration: unreadable/malformed config file, missing
    /// required settings, invalid hyperparameters. Exit code 2.
    Config(String),
    /// Unusable input or output data: missing/corrupt data files,
    /// incompatible archives, unwritable outputs. Exit code 3.
    Data(String),
    /// Failure surfaced by the library, classified by its kind.
    Lib(ensemblekit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Lib(e) => match e {
                ensemblekit::Error::InvalidParameter(_) => 2,
                ensemblekit::Error::Internal(_) => 4,
                _ => 3,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Data(msg) => write!(f, "{msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ensemblekit::Error> for CliError {
    fn from(e: ensemblekit::Error) -> Self {
        CliError::Lib(e)
    }
}

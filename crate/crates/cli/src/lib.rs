//! Command line front end for the `quadform` library: verification suites,
//! classification and invariant reports, and comparisons of JSON inputs.

use std::fmt;

pub mod format;
pub mod report;
pub mod suites;

/// Failures that stop a command before it produces a report.
#[derive(Debug)]
pub enum CliError {
    UnknownSuite(String),
    BadParams(String),
    Parse(String),
    Core(quadform::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownSuite(_) => 2,
            CliError::BadParams(_) | CliError::Core(_) => 3,
            CliError::Parse(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::UnknownSuite(s) => write!(f, "unknown suite {:?}; expected one of {}", s, suites::SUITES.join(", ")),
            CliError::BadParams(s) => write!(f, "bad parameters: {}", s),
            CliError::Parse(s) => write!(f, "parse error: {}", s),
            CliError::Core(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CliError {}

impl From<quadform::Error> for CliError {
    fn from(e: quadform::Error) -> CliError {
        CliError::Core(e)
    }
}

//! Process-level error classification.
//!
//! Exit codes are part of the interface: 0 success, 1 malformed input,
//! 2 inadmissible coefficients, 3 verification failure.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Inadmissible(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Inadmissible(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Inadmissible(msg) => write!(f, "inadmissible coefficients: {msg}"),
            CliError::Verification(msg) => write!(f, "verification failure: {msg}"),
        }
    }
}

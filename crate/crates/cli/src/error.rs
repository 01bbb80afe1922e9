use std::fmt;

use colourful_core::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

/// An error carrying the process exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self { code: EXIT_VERIFICATION, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            // A solver that cannot find what the theorem promises, or whose
            // output fails its own check, is broken rather than misused.
            Error::VerificationFailed(_) | Error::CaptureFailed { .. } | Error::SearchFailed(_) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::usage(format!("malformed JSON: {e}"))
    }
}

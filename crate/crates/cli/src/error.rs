use std::fmt;
use std::process::ExitCode;

use longrun_core::Error as CoreError;
use serde::Serialize;

/// Failure with a stable machine-readable code and exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub status: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, status: u8, message: impl Into<String>) -> Self {
        CliError { code, status, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new("usage", 2, message)
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new("invalid_argument", 6, message)
    }

    pub fn arity(message: impl Into<String>) -> Self {
        Self::new("invalid_arity", 3, message)
    }

    pub fn verify_failed(message: impl Into<String>) -> Self {
        Self::new("verify_failed", 1, message)
    }

    pub fn unsupported_format(message: impl Into<String>) -> Self {
        Self::new("unsupported_format", 8, message)
    }

    /// Writes the structured record to stderr and returns the exit status.
    pub fn report(&self) -> ExitCode {
        #[derive(Serialize)]
        struct Record<'a> {
            error: Body<'a>,
        }
        #[derive(Serialize)]
        struct Body<'a> {
            code: &'a str,
            status: u8,
            message: &'a str,
        }
        let record = Record { error: Body { code: self.code, status: self.status, message: &self.message } };
        eprintln!("{}", serde_json::to_string(&record).expect("error record serializes"));
        ExitCode::from(self.status)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let message = err.to_string();
        match err {
            CoreError::ArityMismatch { .. } => Self::arity(message),
            CoreError::AbsentLetter { letter } => {
                Self::new("absent_letter", 4, format!("letter {} has zero elements", letter + 1))
            }
            CoreError::EmptyComposition => Self::new("empty_composition", 4, message),
            CoreError::CapExceeded { .. } => Self::new("cap_exceeded", 5, message),
            CoreError::LetterIndex { letter, k } => {
                Self::new("letter_out_of_range", 7, format!("letter {} is out of range 1..={k}", letter + 1))
            }
            CoreError::Inconsistent { .. } => Self::new("internal_inconsistency", 70, message),
            _ => Self::invalid(message),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::new("io", 74, err.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        Self::new("io", 74, err.to_string())
    }
}

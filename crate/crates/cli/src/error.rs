use std::fmt;
use std::process::ExitCode;

/// Failure class, mapped to the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Input = 1,
    Solver = 2,
    Regression = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub error: anyhow::Error,
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind as u8)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub trait Classify<T> {
    fn or_fail(self, kind: Kind) -> Result<T, CliError>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn or_fail(self, kind: Kind) -> Result<T, CliError> {
        self.map_err(|e| CliError { kind, error: e.into() })
    }
}

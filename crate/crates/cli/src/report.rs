//! Exit codes and machine-readable failure reports.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {message}")]
    Usage { flag: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Library(#[from] flipgroupoid::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use flipgroupoid::Error as E;
        match self {
            CliError::Usage { .. } | CliError::Io { .. } => EXIT_USAGE,
            CliError::Library(e) => match e {
                E::InvalidSurface(_)
                | E::InvalidTriangulation(_)
                | E::UnknownArc(_)
                | E::SameArc(_)
                | E::IndexOutOfRange { .. }
                | E::Truncated(_)
                | E::InvalidBraid(_)
                | E::StrandMismatch(..)
                | E::OracleUnavailable(_)
                | E::Serde(_) => EXIT_USAGE,
                _ => EXIT_CHECK,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage { .. } => "usage",
            CliError::Io { .. } => "io",
            CliError::Library(flipgroupoid::Error::BudgetExceeded { .. }) => "budget",
            CliError::Library(flipgroupoid::Error::Truncated(_)) => "truncated",
            CliError::Library(_) => "library",
        }
    }

    pub fn report(&self) -> FailureReport {
        FailureReport {
            status: "error",
            exit_code: self.exit_code(),
            kind: self.kind(),
            flag: match self {
                CliError::Usage { flag, .. } => Some(flag.clone()),
                _ => None,
            },
            message: self.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FailureReport {
    pub status: &'static str,
    pub exit_code: i32,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    pub message: String,
}

/// Result of a command: the artifact text and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub artifact: String,
    pub passed: bool,
}

impl Outcome {
    pub fn json<T: Serialize>(value: &T, passed: bool) -> Self {
        let mut artifact = serde_json::to_string_pretty(value).expect("reports serialize");
        artifact.push('\n');
        Outcome { artifact, passed }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_CHECK
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

use serde::Serialize;
use thiserror::Error;

/// Failures of a command; all map to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kmn_core::Error),
    #[error(transparent)]
    Oracle(#[from] kmn_oracle::OracleError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("cross-validation failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Serialize)]
struct ErrorRepr<'a> {
    error: &'a str,
    message: String,
}

impl CliError {
    /// A stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(_) => "domain",
            CliError::Oracle(_) => "oracle",
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "json",
            CliError::Argument(_) => "argument",
            CliError::CheckFailed(_) => "check_failed",
        }
    }

    /// `{"error": kind, "message": …}` on one line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ErrorRepr { error: self.kind(), message: self.to_string() }).expect("plain strings serialize")
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Input-side failures. Each carries enough location to point at the
/// offending file and field.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: cannot read: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {field}: schema violation: {message}")]
    Schema {
        path: PathBuf,
        field: String,
        message: String,
    },

    #[error("{path}: {field}: unresolved reference `{name}`")]
    Unresolved {
        path: PathBuf,
        field: String,
        name: String,
    },

    #[error("{path}: {field}: duplicate label `{name}`")]
    Duplicate {
        path: PathBuf,
        field: String,
        name: String,
    },

    #[error("{path}: {field}: `{name}` is a {found}, expected {expected}")]
    KindMismatch {
        path: PathBuf,
        field: String,
        name: String,
        found: &'static str,
        expected: &'static str,
    },

    #[error("{path}: {field}: {source}")]
    Model {
        path: PathBuf,
        field: String,
        #[source]
        source: lcdual_core::Error,
    },

    #[error("{path}: {field}: {got} atoms exceeds --max-atoms {limit}")]
    SizeLimit {
        path: PathBuf,
        field: String,
        got: usize,
        limit: usize,
    },

    #[error("{path}: import cycle through this file")]
    ImportCycle { path: PathBuf },

    #[error("{0}")]
    Usage(String),

    #[error("internal error while running a suite: {0}")]
    Internal(#[from] lcdual_core::Error),
}

impl CliError {
    /// 3 for size limits, 2 for every other input problem.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SizeLimit { .. } => 3,
            CliError::Model {
                source: lcdual_core::Error::SizeLimit { .. },
                ..
            } => 3,
            _ => 2,
        }
    }
}

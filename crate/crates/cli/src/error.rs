use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use finbench_core::suite::{BundleError, SuiteError};

/// Failure classes, each with its own exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Internal,
    InvalidInput,
    Simulation,
    Violation,
    Infeasible,
    Output,
}

impl Class {
    pub fn exit_code(self) -> i32 {
        match self {
            Class::Internal => 1,
            Class::InvalidInput => 2,
            Class::Simulation => 3,
            Class::Violation => 4,
            Class::Infeasible => 5,
            Class::Output => 6,
        }
    }
}

#[derive(Debug, Error, Serialize)]
#[error("{message}")]
pub struct CliError {
    pub class: Class,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
}

impl CliError {
    pub fn new(class: Class, message: impl Into<String>) -> Self {
        CliError {
            class,
            message: message.into(),
            input: None,
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::new(Class::InvalidInput, message)
    }

    /// An unreadable or malformed input file.
    pub fn input(path: &Path, message: impl std::fmt::Display) -> Self {
        CliError {
            class: Class::InvalidInput,
            message: format!("{}: {message}", path.display()),
            input: Some(path.to_path_buf()),
        }
    }

    pub fn output(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::new(Class::Output, format!("{}: {err}", path.display()))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            error: &'a CliError,
            exit_code: i32,
        }
        serde_json::to_string(&Wire {
            error: self,
            exit_code: self.class.exit_code(),
        })
        .expect("errors serialize")
    }
}

/// Bundle reads fail on inputs; everything else in the bundle layer is
/// about writing.
pub fn reading(err: BundleError) -> CliError {
    match err {
        BundleError::Io { ref path, ref source } => CliError::input(path, source),
        BundleError::Json { ref path, ref source } => CliError::input(path, source),
        BundleError::Journal { ref path, ref source } => CliError::input(path, source),
        BundleError::BadAttachmentName(name) => CliError::invalid(format!("bad attachment name {name:?}")),
    }
}

pub fn writing(err: BundleError) -> CliError {
    match err {
        BundleError::Io { ref path, ref source } => CliError::output(path, source),
        BundleError::Json { ref path, ref source } => CliError::output(path, source),
        other => CliError::new(Class::Internal, other.to_string()),
    }
}

impl From<SuiteError> for CliError {
    fn from(err: SuiteError) -> Self {
        let class = match err {
            SuiteError::Infeasible { .. } | SuiteError::NoExample(_) | SuiteError::Injection { .. } => Class::Infeasible,
            SuiteError::MissingAuditCase(_) | SuiteError::AuditMismatch { .. } | SuiteError::UnknownTask(_) => {
                Class::InvalidInput
            }
            SuiteError::Simulation(_) => Class::Simulation,
            _ => Class::Internal,
        };
        CliError::new(class, err.to_string())
    }
}

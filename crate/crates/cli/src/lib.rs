//! Command-line workbench: JSON input, commands and reports.

pub mod input;
pub mod report;

use std::path::Path;

use coact_core::coaction::Coaction;
use coact_core::{catalog, Error};

pub use input::{emit_coaction, parse, to_json, Workbench, WorkbenchInput};
pub use report::{run, Command, Options, Output};

/// Exit code for a completed computation, whatever the verdict.
pub const EXIT_OK: i32 = 0;
/// Exit code for a violated consistency check.
pub const EXIT_INTERNAL: i32 = 1;
/// Exit code for unusable input.
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

/// Read a file, or fall back to a catalog entry when `source` names one and no such file exists.
pub fn load(source: &str) -> Result<WorkbenchInput, CliError> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(c) = catalog::by_name(source)? {
            return Ok(emit_coaction(&c));
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{source}: {e}")))?;
    parse(&text).map_err(|e| match e {
        CliError::Invalid(m) => CliError::Invalid(format!("{source}: {m}")),
        other => other,
    })
}

/// The coaction an input describes, or an error naming what is missing.
pub fn require_coaction(wb: &Workbench) -> Result<&Coaction, CliError> {
    wb.coaction
        .as_ref()
        .ok_or_else(|| CliError::Invalid(format!("{}: this command needs `action` or `coaction`", wb.name)))
}

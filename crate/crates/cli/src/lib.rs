//! Library side of the `closure-resolve` tool: document formats and the
//! command implementations, each writing its report to a caller-supplied
//! writer.
//!
//! Exit codes: 0 on success, 1 on a negative answer about the input (an
//! axiom violation, a non-regular map, a counterexample), 2 on usage, parse
//! or size errors.

use std::io;
use std::path::PathBuf;

use closure_space::setcore::{DEFAULT_MAX_ELEMENTS, HARD_MAX_ELEMENTS};
use closure_space::Error;
use thiserror::Error as ThisError;

pub mod commands;
pub mod document;

/// Environment variable overriding the ground-set size cap.
pub const MAX_N_ENV: &str = "CLOSURE_RESOLVE_MAX_N";

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {}: {1}", .0.display())]
    Io(PathBuf, #[source] io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Space(#[from] Error),
    #[error("write failed: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Space(e) => space_error_code(e),
            _ => 2,
        }
    }
}

/// 1 for a negative answer about well-formed input, 2 for input that is
/// malformed, oversized or inconsistent.
pub fn space_error_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge(_)
        | Error::OutOfRange(_)
        | Error::DuplicateName(_)
        | Error::TableSize { .. }
        | Error::SpaceMismatch(_)
        | Error::InternalDisagreement(_) => 2,
        _ => 1,
    }
}

/// The ground-set cap: [`MAX_N_ENV`] when set, the library default otherwise.
pub fn ground_cap() -> Result<usize, CliError> {
    let Ok(v) = std::env::var(MAX_N_ENV) else {
        return Ok(DEFAULT_MAX_ELEMENTS);
    };
    let cap: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{MAX_N_ENV} must be a non-negative integer, got {v:?}")))?;
    if cap > HARD_MAX_ELEMENTS {
        return Err(Error::TooLarge(format!("{MAX_N_ENV}={cap} exceeds the hard limit of {HARD_MAX_ELEMENTS}")).into());
    }
    Ok(cap)
}

//! Command-line front end for `vallab`.
//!
//! [`run_command`] executes one invocation in-process and returns the exit
//! status with the captured output, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 domain error, 4 internal
//! cross-check failure.

use std::io::Read;

use thiserror::Error;

mod commands;
pub mod parse;

pub use parse::{parse_approx_seq, parse_ideal, parse_rational, parse_rational_list, scan_ideal, scan_sequence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CROSS_CHECK: i32 = 4;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("mixed variable sets: use either x, y, z or x1, x2, ... throughout")]
    MixedVariableSets,

    #[error("{0}")]
    Usage(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cross-check failure: {0}")]
    CrossCheck(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::MixedVariableSets | CliError::Usage(_) | CliError::Io(_) => EXIT_PARSE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::CrossCheck(_) => EXIT_CROSS_CHECK,
        }
    }
}

impl From<vallab::Error> for CliError {
    fn from(e: vallab::Error) -> Self {
        match e {
            vallab::Error::CrossCheck(m) => CliError::CrossCheck(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    /// Parses stdout as JSON; panics if it is not.
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_str(&self.stdout).expect("stdout is JSON")
    }
}

/// Runs `vallab` with `args` (program name first). Ideals given as `-` are
/// read from `stdin`. `VALLAB_DIM_CAP` overrides the dimension cap.
pub fn run_command<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    if let Some(cap) = std::env::var("VALLAB_DIM_CAP").ok().and_then(|v| v.trim().parse().ok()) {
        vallab::geometry::set_dim_cap(cap);
    }
    let mut warnings = Vec::new();
    match commands::dispatch(args, stdin, &mut warnings) {
        Ok(out) => Outcome {
            code: EXIT_OK,
            stdout: out,
            stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        },
        Err(commands::Failure::Help(text)) => Outcome {
            code: EXIT_OK,
            stdout: text,
            stderr: String::new(),
        },
        Err(commands::Failure::Error(e)) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
///
/// Cursor exhaustion ([`Error::Exhausted`]) is deliberately distinct from
/// every other variant: the battery maps it to "sample too short" instead of
/// treating it as a hard failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("bit length {bit_len} exceeds the {bytes} supplied bytes ({max} bits)")]
    Length {
        bit_len: u64,
        bytes: usize,
        max: u64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("bit cursor exhausted: requested {requested} bits, {remaining} remain")]
    Exhausted { requested: u32, remaining: u64 },

    #[error("input too short: {0}")]
    InputTooShort(String),

    #[error(
        "sample exhausted before every number was declared composite \
         (round k={round}, {bits_consumed} bits consumed, {pending} numbers pending)"
    )]
    SampleTooShort {
        round: u32,
        bits_consumed: u64,
        pending: usize,
    },

    #[error("degenerate source: {0}")]
    DegenerateSource(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("{path}: line {line}: {message}")]
    DataIntegrity {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code for the CLI: 1 for configuration/parameter mistakes,
    /// 2 for anything wrong with the data itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Config(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

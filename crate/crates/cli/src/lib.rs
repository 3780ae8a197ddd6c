//! Library side of the command-line front end, split out so the command
//! implementations are testable without spawning the binary.

pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ESTIMATION: i32 = 3;
pub const EXIT_SIZE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gibbsmix::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Core(e) => match e.kind() {
                gibbsmix::ErrorKind::Domain | gibbsmix::ErrorKind::Config => EXIT_USAGE,
                gibbsmix::ErrorKind::Estimation => EXIT_ESTIMATION,
                gibbsmix::ErrorKind::Size => EXIT_SIZE,
            },
        }
    }
}

use std::io;
use std::path::PathBuf;

use quantstab_core::Error as CoreError;

/// Malformed input (sysexits `EX_USAGE`).
pub const EXIT_USAGE: i32 = 64;
/// The Cartan matrix is not of finite type (sysexits `EX_DATAERR`).
pub const EXIT_NOT_FINITE: i32 = 65;
/// An internal identity failed (sysexits `EX_SOFTWARE`).
pub const EXIT_INTERNAL: i32 = 70;
/// Reading or writing a file failed (sysexits `EX_IOERR`).
pub const EXIT_IO: i32 = 74;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                CoreError::NonFiniteType { .. } => EXIT_NOT_FINITE,
                CoreError::InvalidCartan(_)
                | CoreError::TooLarge(_)
                | CoreError::RankMismatch { .. }
                | CoreError::NotOrthogonal { .. }
                | CoreError::Parse(_)
                | CoreError::Domain(_)
                | CoreError::NotPolynomial(_)
                | CoreError::DivisionByZero => EXIT_USAGE,
                CoreError::Consistency(_) => EXIT_INTERNAL,
            },
            CliError::File { .. } | CliError::Io(_) => EXIT_IO,
            CliError::Json(_) => EXIT_INTERNAL,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

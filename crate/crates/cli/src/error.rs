//! CLI error type mapping every failure to a process exit code and a
//! single-line diagnostic.

use std::fmt;
use std::path::PathBuf;

/// Exit codes: 2 bad configuration, 3 malformed CSV, 4 missing input
/// file, 1 anything else.
#[derive(Debug)]
pub enum CliError {
    /// Unparseable or invalid configuration, including bad flag values.
    Config(String),
    /// Malformed CSV content with its location (1-based line and column).
    Csv {
        path: PathBuf,
        row: usize,
        col: usize,
        message: String,
    },
    /// An input file that does not exist.
    MissingFile(PathBuf),
    /// Any other failure (IO, computation on degenerate data).
    Other(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Csv { .. } => 3,
            CliError::MissingFile(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Csv {
                path,
                row,
                col,
                message,
            } => write!(
                f,
                "malformed CSV {}:{row}:{col}: {message}",
                path.display()
            ),
            CliError::MissingFile(path) => {
                write!(f, "missing input file: {}", path.display())
            }
            CliError::Other(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<statelink_core::Error> for CliError {
    /// Core configuration rejections keep exit code 2; every other core
    /// error surfaces as a generic failure.
    fn from(e: statelink_core::Error) -> Self {
        match e {
            statelink_core::Error::InvalidConfig(_) => CliError::Config(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(format!("io error: {e}"))
    }
}

/// Wraps an IO error for `path`, turning NotFound into the dedicated
/// missing-file code.
pub fn io_at(path: &std::path::Path, e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::NotFound {
        CliError::MissingFile(path.to_path_buf())
    } else {
        CliError::Other(format!("io error on {}: {e}", path.display()))
    }
}

use std::fmt;

use krfusion::Error;

/// A failure together with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Mathematical disagreement, scan violation or non-stabilization.
    Failure(String),
    /// Malformed input or configuration.
    Usage(String),
    /// A request outside the supported scope.
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failure(m) => write!(f, "{m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedType(_) | Error::UnsupportedRealization(_) => {
                CliError::Unsupported(e.to_string())
            }
            Error::Invalid(_)
            | Error::NotDominant(_)
            | Error::SizeMismatch(_)
            | Error::ShapeMismatch(_)
            | Error::CoincidentPoints
            | Error::EmptyTuple
            | Error::NotPositiveRoot(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

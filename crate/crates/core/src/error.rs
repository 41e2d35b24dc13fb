use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The closed-form solution is singular for these parameters; integrate numerically instead.
    #[error("singular parameters: {0}")]
    SingularParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("invalid model manifest: {0}")]
    Manifest(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short stable code used by command-line front ends.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "E_DOMAIN",
            Error::InvalidArgument(_) => "E_ARG",
            Error::UndefinedCorrelation(_) | Error::Degenerate(_) => "E_STATS",
            Error::SingularParameter(_) => "E_SINGULAR",
            Error::Parse { .. } | Error::Csv(_) | Error::Json(_) => "E_PARSE",
            Error::Manifest(_) => "E_CONFIG",
            Error::Io { .. } => "E_IO",
        }
    }
}

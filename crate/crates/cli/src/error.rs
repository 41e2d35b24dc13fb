use std::fmt;
use std::path::Path;

/// Failure reported as a single `CODE: message` line on stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::new("E_IO", format!("{}: {err}", path.display()))
    }

    pub fn exit_code(&self) -> i32 {
        if self.code == "E_ARG" {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // keep it on one line whatever the underlying error printed
        let flat = self.message.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "{}: {flat}", self.code)
    }
}

impl From<muscle_fatigue::Error> for CliError {
    fn from(err: muscle_fatigue::Error) -> Self {
        Self::new(err.code(), err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        Self::new("E_CONFIG", err.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

use std::fmt;
use std::path::{Path, PathBuf};

/// CLI failure, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// `--help` / `--version`; printed to stdout with exit code 0.
    Help(String),
    Usage(String),
    Integrity(String),
    Io { path: Option<PathBuf>, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) => 1,
            CliError::Integrity(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: Option<&Path>, err: impl fmt::Display) -> Self {
        CliError::Io {
            path: path.map(Path::to_path_buf),
            message: err.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Help(text) => f.write_str(text),
            CliError::Usage(msg) => write!(f, "{}", msg.trim_end()),
            CliError::Integrity(msg) => write!(f, "integrity error: {msg}"),
            CliError::Io { path: Some(p), message } => write!(f, "i/o error on {}: {message}", p.display()),
            CliError::Io { path: None, message } => write!(f, "i/o error: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<selink::Error> for CliError {
    fn from(e: selink::Error) -> Self {
        match e {
            selink::Error::Usage(_) | selink::Error::Resource(_) => CliError::Usage(e.to_string()),
            selink::Error::Integrity(m) => CliError::Integrity(m),
            selink::Error::Input(m) => CliError::Io { path: None, message: m },
        }
    }
}

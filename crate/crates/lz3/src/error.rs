use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_REGRESSION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("config error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown figure `{0}` (expected one of fig1a, fig1b, fig1c, fig2a, fig2b, fig2c, fig3a, fig3b, fig4)")]
    UnknownFigure(String),
    #[error("numerical failure ({}): {}", .0.name(), .0)]
    Numeric(#[from] lz3_core::Error),
    #[error("comparison bound exceeded: max deviation {max:.3e} > bound {bound:.3e}")]
    Regression { max: f64, bound: f64 },
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Regression { .. } => EXIT_REGRESSION,
            _ => EXIT_CONFIG,
        }
    }

    /// Core validation failures met while reading a config are config errors.
    pub(crate) fn config(e: lz3_core::Error) -> Self {
        CliError::Config(e.to_string())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C"; the fields carry it instead
        let msg = e.to_string();
        let message = match msg.rfind(" at line ") {
            Some(i) => msg[..i].to_string(),
            None => msg,
        };
        CliError::Parse { line: e.line(), column: e.column(), message }
    }
}

pub type CliResult<T> = Result<T, CliError>;

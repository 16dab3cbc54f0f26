//! File formats, report emission and the verification suite behind the `lieext` binary.

pub mod checks;
pub mod format;
pub mod report;
pub mod suite;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("parse error in field {field}: {msg}")]
    Schema { field: String, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lieext::Error),
}

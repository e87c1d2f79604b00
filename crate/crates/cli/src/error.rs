use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("no terms found")]
    Empty,
    #[error("invalid report: {0}")]
    Report(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Everything that ends a run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Format { context: String, source: FormatError },
    #[error(transparent)]
    Core(#[from] realseq_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

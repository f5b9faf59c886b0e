use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    ConfigParse { line: usize, message: String },
    #[error("golden mismatch at record {index} ({name}): {reason}")]
    GoldenMismatch { index: usize, name: String, reason: String },
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qcft::Error),
}

impl CliError {
    /// 2 for usage problems, 1 for failed comparisons and checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::GoldenMismatch { .. } => 1,
            _ => 2,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("{0} golden mismatch(es)")]
    GoldenMismatch(usize),
}

impl CliError {
    pub fn field(path: impl Into<String>, message: impl ToString) -> Self {
        CliError::Field {
            path: path.into(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::GoldenMismatch(_) => 3,
            _ => 2,
        }
    }
}

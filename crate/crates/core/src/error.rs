use thiserror::Error;

/// Errors raised by the library. CLI maps these onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid placement: {0}")]
    InvalidPlacement(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{name} = {value} is out of range {range}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        range: String,
    },
    #[error("table {table} does not match reference values: {}", .cells.join("; "))]
    TableMismatch { table: String, cells: Vec<String> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(name: &'static str, value: usize, lo: usize, hi: usize) -> Error {
    Error::OutOfRange {
        name,
        value: value as i64,
        range: format!("{lo}..={hi}"),
    }
}

use thiserror::Error;

/// Failures that stop a computation. Metrics that are merely undefined for
/// the given input are reported through [`crate::MetricValue`] instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("data error at row {row}, column {column}: {message}")]
    Data {
        /// 1-based data row (the header is row 0).
        row: usize,
        column: String,
        message: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty input: no data rows")]
    EmptyInput,

    #[error("usage error: {0}")]
    Usage(String),

    #[error("undefined: {0}")]
    Definedness(String),

    #[error("too few observations: need at least {needed}, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("csv error: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

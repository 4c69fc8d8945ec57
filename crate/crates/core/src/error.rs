use thiserror::Error;

/// Errors raised by the signature-kernel library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet size must be positive")]
    ZeroDim,

    #[error("shape mismatch: (dim {left_dim}, degree {left_degree}) vs (dim {right_dim}, degree {right_degree})")]
    ShapeMismatch {
        left_dim: usize,
        left_degree: usize,
        right_dim: usize,
        right_degree: usize,
    },

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("degree {requested} out of range (tensor degree {actual})")]
    DegreeOutOfRange { requested: usize, actual: usize },

    #[error("letter {letter} out of range for alphabet of size {dim}")]
    LetterOutOfRange { letter: usize, dim: usize },

    #[error("word of length {len} exceeds truncation degree {degree}")]
    WordTooLong { len: usize, degree: usize },

    #[error("index {index} out of range for {len} coefficients")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("expected scalar slot {expected}, found {found}")]
    ScalarSlot { expected: f64, found: f64 },

    #[error("invalid time series: {0}")]
    InvalidSeries(String),

    #[error("invalid window or partition: {0}")]
    InvalidPartition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

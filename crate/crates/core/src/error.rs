use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input (dimensions, non-finite entries, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exponent outside the regime an operation is defined for.
    #[error("exponent p = {p} is outside the required regime {expected}")]
    Regime { p: f64, expected: &'static str },

    /// Input the inequality explicitly excludes (the zero vector).
    #[error("excluded input: {0}")]
    ExcludedInput(String),

    /// A cross-coherence of zero would make the bound infinite.
    #[error("degenerate bound: {0}")]
    DegenerateBound(String),

    /// A frame pair failed the classification an inequality requires.
    #[error("classification failed: {0}")]
    Classification(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("search budget exhausted: {0}")]
    Budget(String),

    /// Malformed matrix file; `row` is 1-based and counts the header line.
    #[error("malformed matrix file at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

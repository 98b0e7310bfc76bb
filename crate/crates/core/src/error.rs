use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exponent tuple violates the dimension constraint |d| = 3g + n - 3.
    #[error("dimension error: |d| = {total} but 3g + n - 3 = {expected} for g = {genus}, n = {len}")]
    Dimension {
        genus: u32,
        len: usize,
        total: u64,
        expected: i64,
    },

    /// A persisted cache file could not be parsed.
    #[error("cache format error at line {line}: {message}")]
    Format { line: usize, message: String },

    /// An internal consistency check failed; indicates a bug upstream.
    #[error("pipeline integrity error: {0}")]
    PipelineIntegrity(String),

    /// A numerical routine could not reach the requested accuracy.
    #[error("accuracy error: achieved {achieved:e}, required {required:e}")]
    Accuracy { achieved: f64, required: f64 },

    /// The argument is syntactically valid but deliberately unsupported.
    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

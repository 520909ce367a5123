use thiserror::Error;

/// Errors produced by matrix construction, sequence generation and the
/// discrepancy engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input vector has {len} digits but the matrix truncation is {dim}x{dim}")]
    VectorTooLong { len: usize, dim: usize },

    #[error("operation needs truncation dimension {needed} but the matrix has {have}")]
    DimensionExceeded { needed: usize, have: usize },

    #[error("matrix is singular: left upper {order}x{order} block is rank deficient")]
    SingularMatrix { order: usize },

    #[error("matrix is not upper triangular with unit diagonal")]
    NotNut,

    #[error("unsupported matrix spec: expected {expected}, got {got}")]
    UnsupportedSpec { expected: &'static str, got: String },

    #[error("index {index} out of range: limit {limit}")]
    IndexOutOfRange { index: String, limit: String },

    #[error(
        "prefix of {requested} points exceeds the point budget {budget}; \
         use the fast signed-integral path, which needs no point enumeration"
    )]
    BudgetExceeded { requested: u64, budget: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 invalid input, 3 resource exhaustion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } | Error::Io(_) => 3,
            _ => 2,
        }
    }
}

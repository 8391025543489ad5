use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular: pivot {pivot} has magnitude {magnitude:e}")]
    SingularMatrix { pivot: usize, magnitude: f64 },

    #[error("power iteration did not converge (best estimate {best})")]
    ConvergenceFailure { best: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entries must be finite")]
    NonFinite,

    #[error("dimension must be positive")]
    EmptyDimension,

    #[error("vector is zero")]
    ZeroVector,

    #[error("parse error at position {position}: {message}")]
    ParseError { position: usize, message: String },

    #[error("invalid exponent {0}: p must satisfy p >= 1")]
    InvalidExponent(f64),

    #[error("matrix file error: {0}")]
    MatrixFile(String),

    #[error("transform is too ill-conditioned (condition estimate {0:e})")]
    IllConditioned(f64),

    #[error("norm specification nested deeper than {0}")]
    NestingTooDeep(usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("degenerate witness: {0}")]
    DegenerateWitness(String),

    #[error("budget {budget} is below the minimum of {minimum}")]
    BudgetTooSmall { budget: usize, minimum: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Variant name, used verbatim by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::NonFinite => "NonFinite",
            Error::EmptyDimension => "EmptyDimension",
            Error::ZeroVector => "ZeroVector",
            Error::ParseError { .. } => "ParseError",
            Error::InvalidExponent(_) => "InvalidExponent",
            Error::MatrixFile(_) => "MatrixFile",
            Error::IllConditioned(_) => "IllConditioned",
            Error::NestingTooDeep(_) => "NestingTooDeep",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DegenerateWitness(_) => "DegenerateWitness",
            Error::BudgetTooSmall { .. } => "BudgetTooSmall",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

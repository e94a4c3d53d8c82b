use std::fmt;

/// Errors raised by the numerical kernels and experiment drivers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DivisionByZero,
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    InvalidPrecision(String),
    InvalidArgument(String),
    /// Argument outside the mathematical domain of an operation.
    Domain {
        op: &'static str,
        detail: String,
    },
    /// A Cholesky pivot became non-positive at the working precision (1-based index).
    PrecisionExhausted {
        pivot: usize,
    },
    NotSymmetric {
        row: usize,
        col: usize,
    },
    NotConverged {
        op: &'static str,
        iterations: usize,
        residual: f64,
    },
    NonFinite {
        op: &'static str,
    },
}

impl Error {
    /// True for failures caused by arithmetic rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted { .. } | Error::NotConverged { .. } | Error::NonFinite { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "{op}: dimension mismatch {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::InvalidPrecision(msg) => write!(f, "invalid precision: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Domain { op, detail } => write!(f, "{op}: argument outside domain ({detail})"),
            Error::PrecisionExhausted { pivot } => write!(
                f,
                "precision exhausted: non-positive Cholesky pivot at index {pivot}"
            ),
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::NotConverged {
                op,
                iterations,
                residual,
            } => write!(
                f,
                "{op} did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::NonFinite { op } => write!(f, "{op}: non-finite value encountered"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("tolerance must be nonnegative, got {0}")]
    NegativeTolerance(f64),

    #[error("spectrum not real (trace of B^2 is {0})")]
    SpectrumNotReal(f64),

    #[error("inconsistent known eigenvalue: deflated variance {0} is negative")]
    InconsistentEigenvalue(f64),

    #[error("not real-rooted: {0}")]
    NotRealRooted(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("dimension {got} exceeds the oracle cap of {cap}")]
    DimensionCap { got: usize, cap: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("eigenvalue iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),

    #[error("invalid request: {0}")]
    Request(String),
}

impl Error {
    pub(crate) fn parse(path: &str, line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

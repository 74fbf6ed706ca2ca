use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u32),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("element is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("objects live over different rings")]
    RingMismatch,

    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },

    #[error("the relations do not form a regular sequence: {0}")]
    NotRegular(String),

    #[error("length is infinite: {0}")]
    InfiniteColength(String),

    #[error("sequence did not stabilize: {0}")]
    NotStabilized(String),

    #[error("complexity is positive, the Euler characteristic is undefined")]
    CxPositive,

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("could not certify: {0}")]
    NotCertified(String),

    #[error("no surjective form found after {attempts} attempts")]
    NoSurjectiveForm { attempts: usize },

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("lifting coefficients are degenerate: {0}")]
    DegenerateCoefficients(String),

    #[error("degree bound exceeded: {0}")]
    DegreeBound(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used in reports and on the command line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "INVALID_PRIME",
            Error::Parse { .. } => "PARSE",
            Error::Input(_) => "INPUT",
            Error::NonHomogeneous(_) => "NON_HOMOGENEOUS",
            Error::RingMismatch => "RING_MISMATCH",
            Error::TooManyVariables { .. } => "TOO_MANY_VARIABLES",
            Error::NotRegular(_) => "NOT_REGULAR",
            Error::InfiniteColength(_) => "INFINITE_COLENGTH",
            Error::NotStabilized(_) => "NOT_STABILIZED",
            Error::CxPositive => "CX_POSITIVE",
            Error::Undefined(_) => "UNDEFINED",
            Error::NotCertified(_) => "NOT_CERTIFIED",
            Error::NoSurjectiveForm { .. } => "FAIL",
            Error::NotExact(_) => "NOT_EXACT",
            Error::DegenerateCoefficients(_) => "DEGENERATE",
            Error::DegreeBound(_) => "DEGREE_BOUND",
            Error::Internal(_) => "INTERNAL",
        }
    }

    /// Whether the error stems from malformed user input rather than from a
    /// mathematical obstruction found during computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidPrime(_)
                | Error::Parse { .. }
                | Error::Input(_)
                | Error::NonHomogeneous(_)
                | Error::RingMismatch
                | Error::TooManyVariables { .. }
                | Error::NotRegular(_)
        )
    }
}

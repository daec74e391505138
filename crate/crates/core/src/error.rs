use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is too small (need p >= 5)")]
    SmallPrime(u64),
    #[error("modulus {0} is not a supported prime")]
    NotPrime(u64),
    #[error("curve polynomial must be monic of degree 5")]
    BadDegree,
    #[error("curve polynomial is not squarefree mod p")]
    NonSquarefree,
    #[error("point ({0}, {1}) is not on the curve")]
    NotOnCurve(u64, u64),
    #[error("affine multiplicity {0} exceeds the supported maximum of 2")]
    UnsupportedMultiplicity(i64),
    #[error("divisor is not effective")]
    NotEffective,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("function has a pole at the evaluation point")]
    PoleAtPoint,
    #[error("embedding degree {0} is below 6")]
    DegreeTooSmall(usize),
    #[error("function is not in the span of the linear series")]
    NotInSpan,
    #[error("linear series has dimension {0}, not a pencil")]
    NotAPencil(usize),
    #[error("curve has too few rational points")]
    InsufficientPoints,
    #[error("fiber has rank {got}, expected {expected}")]
    DegenerateFiber { expected: usize, got: usize },
    #[error("{what}: computed {got} independent quadrics, expected {expected}")]
    UnexpectedRank {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("scroll type bound violated: e1 - e2 = {0} > 3")]
    BoundViolation(i64),
    #[error("intersection of classes on scrolls of different degree ({0} vs {1})")]
    MismatchedScroll(i64, i64),
    #[error("no admissible g13 found within the rejection budget")]
    NoAdmissibleD,
    #[error("the g13-scroll contains the g12-scroll")]
    PreconditionViolated,
    #[error("no classification row matched (d = {0})")]
    NoRowMatched(usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Input errors map to exit code 2 in the CLI and FFI.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SmallPrime(_)
                | Error::NotPrime(_)
                | Error::BadDegree
                | Error::NonSquarefree
                | Error::NotOnCurve(..)
                | Error::UnsupportedMultiplicity(_)
                | Error::NotEffective
                | Error::DegreeTooSmall(_)
                | Error::DegreeMismatch(_)
                | Error::Parse(_)
                | Error::Input(_)
                | Error::BoundViolation(_)
        )
    }
}

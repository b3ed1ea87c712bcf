use alloc::string::String;
use core::fmt;

/// Failure modes shared by every pipeline in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Caller broke a documented precondition (shape, index, order mismatch).
    Usage(String),
    /// An element that has to be inverted is not a unit.
    Singular(String),
    /// The genericity assumption behind a construction fails for this input.
    NonGeneric(String),
    /// A computed object violates an identity that must hold.
    InvariantViolation(String),
    /// Parameters hit a pole of a Pochhammer symbol or break a constraint.
    Parameter(String),
    /// The continued-fraction step is not admissible.
    Breakdown { step: usize, index: usize },
    /// A discrete measure has too few support points.
    DegenerateMeasure(String),
    /// Malformed textual input.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(m) => write!(f, "usage error: {m}"),
            Error::Singular(m) => write!(f, "singular input: {m}"),
            Error::NonGeneric(m) => write!(f, "non-generic input: {m}"),
            Error::InvariantViolation(m) => write!(f, "invariant violation: {m}"),
            Error::Parameter(m) => write!(f, "parameter error: {m}"),
            Error::Breakdown { step, index } => {
                write!(f, "breakdown at step {step}: constant term {index} vanishes")
            }
            Error::DegenerateMeasure(m) => write!(f, "degenerate measure: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;

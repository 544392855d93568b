use thiserror::Error;

use crate::polyring::PolyError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: parse failures, unknown names, out-of-range indices.
    Validation,
    /// A mathematical precondition does not hold for the given data.
    Precondition,
    /// An iteration or degree cap was hit.
    Limit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{what} {value} out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("ideal is not supported at the origin alone")]
    SupportNotAtOrigin,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("stratum {stratum} has expected dimension {expected_dim}, not 0")]
    StratumNotZeroDimensional { stratum: usize, expected_dim: i64 },
    #[error(
        "stratum {stratum} has dimension {actual}, expected {expected}: not a determinantal \
         singularity of the declared type"
    )]
    DimensionMismatch {
        stratum: usize,
        expected: i64,
        actual: i64,
    },
    #[error("parameter `{0}` is not specialized")]
    Unspecialized(String),
    #[error("no Euler data for stratum {0}")]
    MissingEulerData(usize),
    #[error("no colength for zero-dimensional stratum {0}")]
    MissingColength(usize),
    #[error("solved multiplicity for stratum {stratum} is {value} < 0: inconsistent data")]
    NegativeMultiplicity { stratum: usize, value: i64 },
    #[error("no stratum of the model has non-negative expected dimension")]
    NoPresentStrata,
    #[error("{what}: expected {expected} entries, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("Gröbner basis degree {degree} exceeds the cap of {cap}")]
    DegreeLimit { degree: u32, cap: u32 },
    #[error("saturation did not stabilize within {0} quotient steps")]
    SaturationLimit(usize),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Poly(PolyError::DivisionByZero) => ErrorKind::Precondition,
            Error::Poly(_)
            | Error::OutOfRange { .. }
            | Error::Invalid(_)
            | Error::Unspecialized(_)
            | Error::LengthMismatch { .. } => ErrorKind::Validation,
            Error::DegreeLimit { .. } | Error::SaturationLimit(_) => ErrorKind::Limit,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn range(what: &'static str, value: impl TryInto<i64>, min: i64, max: i64) -> Self {
        Error::OutOfRange {
            what,
            value: value.try_into().unwrap_or(i64::MAX),
            min,
            max,
        }
    }
}

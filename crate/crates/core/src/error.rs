use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// An argument lies outside the domain of the function.
    Domain(&'static str),
    /// A matrix handed in as a correlation matrix is not one (asymmetric,
    /// non-unit diagonal or entries outside `[-1, 1]`).
    NotCorrelation(&'static str),
    /// Cholesky factorization hit a pivot at or below the tolerance.
    NotPositiveDefinite { pivot: usize },
    DimensionMismatch { expected: usize, found: usize },
    DimensionTooLarge { dim: usize, max: usize },
    IndexOutOfRange { index: usize, len: usize },
    EmptyGrid,
    /// The evaluated pmf carries no mass on the requested grid.
    ZeroMass,
}

impl Error {
    /// Whether the failure is numerical (bad matrix, vanishing mass) rather
    /// than a malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotPositiveDefinite { .. } | Error::ZeroMass)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NotCorrelation(what) => write!(f, "not a correlation matrix: {what}"),
            Error::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DimensionTooLarge { dim, max } => {
                write!(f, "dimension {dim} exceeds the supported maximum {max}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::EmptyGrid => f.write_str("grid is empty"),
            Error::ZeroMass => f.write_str("pmf has zero total mass on the grid"),
        }
    }
}

impl core::error::Error for Error {}

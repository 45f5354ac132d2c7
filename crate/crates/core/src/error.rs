use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent {value} must be at least {min}")]
    Exponent { value: f64, min: f64 },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("path must contain at least one sample")]
    EmptyPath,
    #[error("times are not strictly increasing at position {0}")]
    NonIncreasingTimes(usize),
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index entry {0} is not a sample time of the path")]
    NotInDomain(f64),
    #[error("index sequence must be strictly increasing")]
    NonIncreasingIndex,
    #[error("input of size {size} exceeds the exhaustive limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("fraction is not reduced: gcd of numerators and {q} is {gcd}")]
    NotReduced { q: u64, gcd: u64 },
    #[error("quadrature did not converge (estimated error {estimate:e})")]
    Quadrature { estimate: f64 },
    #[error("infeasible grid: estimated {estimate} evaluations exceeds {limit}")]
    Infeasible { estimate: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_exponent(value: f64, min: f64) -> Result<()> {
    if value.is_nan() || value < min {
        Err(Error::Exponent { value, min })
    } else {
        Ok(())
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}

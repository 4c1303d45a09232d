use thiserror::Error;

/// Errors raised by the interval algebra and the engines built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operand of a sum is empty")]
    EmptyOperand,
    #[error("set is empty")]
    EmptySet,
    #[error("set is not contained in (0,1): {0}")]
    NotInUnitInterval(String),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("invalid interval #{index} ({lo}, {hi}): lower end must be below upper end")]
    InvalidInterval { index: usize, lo: String, hi: String },
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("malformed set file: {0}")]
    SetFile(String),
    #[error("fold count must be at least 1")]
    ZeroFold,
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: String },
    #[error("sup of the set must be 1, got {0}")]
    SupNotOne(String),
    #[error("grid too fine: {cells} cells exceed the limit of {limit}")]
    GridTooLarge { cells: String, limit: u64 },
    #[error("fixpoint did not converge within {0} rounds")]
    IterationCapExceeded(u64),
    #[error("alpha = {alpha} outside {range}")]
    AlphaOutOfRange { alpha: String, range: &'static str },
    #[error("construction inconsistent: {0}")]
    Inconsistent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("infeasible search parameters: {0}")]
    Infeasible(String),
    #[error("unknown {what}: {value}")]
    Unknown { what: &'static str, value: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

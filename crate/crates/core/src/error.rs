use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Mathematical "no" answers (a property that fails, an empty intersection)
/// are never errors; they are reported in the returned values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("index set is empty")]
    EmptyIndexSet,

    #[error("index {index} out of range for family of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("set {0:?} is empty")]
    EmptySet(String),

    #[error("set {0:?} must be given as a vertex representation")]
    NotVRep(String),

    #[error("set {0:?} is not compact")]
    NotCompact(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("catalog has no exact value for {0}")]
    CatalogMiss(String),

    #[error("LP budget of {0} calls exhausted")]
    BudgetExhausted(u64),

    #[error("family too large for subset enumeration ({0} members, limit 128)")]
    FamilyTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

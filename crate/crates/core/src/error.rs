use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field order {q} exceeds the limit {max}")]
    LimitExceeded { q: u64, max: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    DlogOfZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("expected {expected} lower parameters, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("argument outside the stated domain: {0}")]
    DomainRestriction(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("empty domain for {identity} at q={q}")]
    EmptyDomain { identity: String, q: u32 },
    #[error("failure index {index} out of range ({len} failures)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid table cache: {0}")]
    InvalidCache(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the algebraic layers (fields, permutations, algebras, codes).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("enumeration cap exceeded: {what} ({value} > {cap})")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("group is not regular")]
    NotRegular,
    #[error("element not in group: {0}")]
    NotInGroup(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("zero code has no minimum weight")]
    ZeroCode,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

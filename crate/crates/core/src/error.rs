use thiserror::Error;

/// Errors produced by code construction, arithmetic and decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {0} exceeds the supported table size")]
    FieldTooLarge(u64),

    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },

    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },

    #[error("modulus is irreducible but x is not primitive (order {order} instead of {expected})")]
    NonPrimitiveModulus { order: u64, expected: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not a unit in the quotient ring")]
    NotAUnit,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("enumeration of {needed} words exceeds the cap of {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A decoder pivot vanished. Impossible for matrices that passed the
    /// column-minor checks, so this signals a bug rather than bad input.
    #[error("pivot assertion failed: {0}")]
    PivotViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

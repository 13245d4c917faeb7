use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero generator at index {0}")]
    ZeroGenerator(usize),

    #[error("cone contains a line")]
    NotPointed,

    #[error("semigroup is not positive: its cone contains a line")]
    NotPositive,

    #[error("vector is not in the cone")]
    NotInCone,

    #[error("not a face of the cone")]
    NotAFace,

    #[error("not a fan: {0}")]
    NotAFan(String),

    #[error("seminormalization certification failed at bound {bound}: {detail}")]
    BoundTooSmall { bound: u32, detail: String },

    #[error("integer overflow converting to machine integers")]
    Overflow,

    #[error("invalid monoidal complex: {0}")]
    Invalid(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

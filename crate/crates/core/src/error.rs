use thiserror::Error;

use crate::aplus::Seq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("matrix is not invertible over the integers (determinant {det})")]
    NotUnimodular { det: i64 },
    #[error("requested {requested} convergents but only {available} coefficient pairs were given")]
    TooFewCoefficients { requested: usize, available: usize },

    #[error("sequence {seq} is too short: need length at least {min}")]
    SequenceTooShort { seq: Seq, min: usize },
    #[error("entry at position {pos} of {seq} is not 1")]
    NotOne { seq: Seq, pos: usize },
    #[error("position {pos} is out of range for a sequence of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("{seq} is not in A+")]
    NotInAplus { seq: Seq },

    #[error("characteristic sequence must have even length, got {len}")]
    OddCycleLength { len: usize },
    #[error("negative entry {value} at position {pos}; off-diagonal Cartan entries must be <= 0 (M1)")]
    NegativeEntry { pos: usize, value: i64 },
    #[error("operation requires a cycle scheme, got a chain")]
    ExpectedCycle,
    #[error("operation requires a chain scheme, got a cycle")]
    ExpectedChain,
    #[error("object {object} does not exist (scheme has {objects} objects)")]
    NoSuchObject { object: usize, objects: usize },
    #[error("scheme is invalid: {0}")]
    Invalid(String),

    #[error("covering fold must be at least 1")]
    ZeroFold,
    #[error("loop matrix has infinite order; no finite universal cover exists")]
    InfiniteOrder,
    #[error("root system does not belong to the expected scheme")]
    SchemeMismatch,

    #[error("root system is reducible; no A+ sequence can be read off")]
    Reducible,
    #[error("positive root counts differ across objects")]
    NonUniformRootCount,

    #[error("scheme does not admit a finite root system")]
    NotFinite,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("certificate rejected at step {step}: {reason}")]
    Certificate { step: usize, reason: String },
    #[error("length {n} is outside the supported range {min}..={max}")]
    LengthOutOfRange { n: usize, min: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;

use crate::krull::Dim;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("coefficient ring mismatch")]
    RingMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("polynomial is not monic in the last variable")]
    NotMonic,
    #[error("module is not torsion")]
    NotTorsion,
    #[error("zero module")]
    ZeroModule,
    #[error("operation not supported over {0}")]
    UnsupportedRing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("descent dimension {descent} disagrees with oracle dimension {oracle}")]
    DimensionMismatch { descent: Dim, oracle: Dim },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

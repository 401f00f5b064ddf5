use thiserror::Error;

use crate::tuple::IntTuple;

/// Errors raised by constructors, parsers and the few operations that have
/// genuine failure modes. Precondition violations on hot query paths (a tuple
/// of the wrong length handed to a [`Semigroup`](crate::Semigroup) query) are
/// panics instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} is outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("expected a nonempty list of tuples")]
    Empty,

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid description: {0}")]
    InvalidDescription(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coordinate {0} exceeds the supported magnitude 2^40")]
    CoordinateOverflow(i64),

    #[error("operation needs m = 2, the description has m = {0}")]
    NotTwoPoint(usize),

    #[error("the semigroup is not symmetric")]
    NotSymmetric,

    #[error("description is not self-consistent at {at}: {reason}")]
    Inconsistent { at: IntTuple, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

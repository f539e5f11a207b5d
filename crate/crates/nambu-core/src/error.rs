use thiserror::Error;

use crate::textio::ParseError;

/// Errors shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: values belong to different coordinate contexts")]
    ContextMismatch,

    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("point has {got} coordinates, context has {expected}")]
    PointDimension { expected: usize, got: usize },

    #[error("{0}")]
    ZeroInput(&'static str),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("multivector is not a Nambu structure")]
    NotNambu,

    #[error("{0}")]
    MuPrecondition(String),

    #[error("wrong regime: {0}")]
    WrongRegime(String),

    #[error("wedge of the two structures vanishes identically; use the degenerate commutativity test")]
    DegenerateWedge,

    #[error("invalid coordinate map: {0}")]
    InvalidMap(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("term limit of {limit} exceeded; raise NAMBU_TERM_LIMIT to allow larger intermediates")]
    ResourceLimit { limit: usize },

    #[error("{0}")]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

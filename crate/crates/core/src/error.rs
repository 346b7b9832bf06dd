use thiserror::Error;

use crate::report::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch {
        left: crate::linalg::Field,
        right: crate::linalg::Field,
    },

    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("malformed algebra data: {0}")]
    MalformedAlgebra(String),

    #[error("operation requires a verified twisting candidate")]
    Unverified,

    #[error("the algebras of the two candidates differ")]
    AmbientMismatch,

    #[error("restriction to the first factor is not a twisting map")]
    ThetaNotTwisting(Box<VerificationReport>),

    #[error("candidate does not have the lower block-triangular form (Gamma01 != 0)")]
    BlockFormAbsent,

    #[error("algebra is not a direct product with block sizes {n} + {m}")]
    NotDirectProduct { n: usize, m: usize },

    #[error("not an algebra morphism: {reason} at witness {witness:?}")]
    NotMorphism {
        reason: &'static str,
        witness: Vec<usize>,
    },

    #[error("algebra is not of the required shape: {0}")]
    WrongShape(&'static str),

    #[error("search space of {size} candidates exceeds the limit of {limit}")]
    SearchTooLarge { size: u128, limit: u64 },
}

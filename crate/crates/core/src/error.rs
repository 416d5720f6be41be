use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual subsystems so callers can map them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("subspace is not contained in the ambient space")]
    SubspaceNotContained,

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("ideal computation did not stabilize within max_len = {0}")]
    NotStabilized(usize),

    #[error("algebra is not basic: {0}")]
    NotBasic(String),

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("complexes are not compatible: {0}")]
    ComplexMismatch(String),

    #[error("decomposition is not basic: {0}")]
    NotBasicDecomposition(String),

    #[error("summand is not indecomposable: {0}")]
    NotIndecomposable(String),

    #[error("complex is not concentrated in degrees 0 and 1")]
    NotTwoTerm,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("potential term is not a cycle: {0}")]
    NonCycleTerm(String),

    #[error("unknown vertex: {0}")]
    UnknownVertex(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

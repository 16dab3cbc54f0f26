use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not contained in the total space")]
    NotASubspace,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is not filiform")]
    NotFiliform,
    #[error("graded algebra matches neither n_(n,1) nor Q_(2n)")]
    Unrecognized,
    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiFailure { i: usize, j: usize, k: usize },
    #[error("form is not a 2-cocycle")]
    NotACocycle,
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("automorphism parameters are not invertible: {0}")]
    NotInvertible(String),
    #[error("matrix does not preserve the bracket at ({i}, {j})")]
    NotAnAutomorphism { i: usize, j: usize },
    #[error("cannot normalize: {0}")]
    NotNormalizable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// diagnose the failing input without re-running.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not unitary (defect {defect:.3e} > {tol:.1e})")]
    NotUnitary { defect: f64, tol: f64 },
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("elements belong to different actions: {0}")]
    ActionMismatch(String),
    #[error("generator labels differ: {0}")]
    LabelMismatch(String),
    #[error("representation is not irreducible (commutant dimension {commutant_dim})")]
    NotIrreducible { commutant_dim: usize },
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("covariance violated: {0}")]
    NotCovariant(String),
    #[error("operator does not factor as a tensor product: {0}")]
    NotFactorable(String),
    #[error("power is not scalar: {0}")]
    NotScalarPower(String),
    #[error("block structure violated: {0}")]
    BlockStructureViolation(String),
    #[error("canonical form violated: {0}")]
    CanonicalFormViolation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

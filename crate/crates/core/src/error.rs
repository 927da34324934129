//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the algebra, metric, spectral and dynamics layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("shape mismatch: ({0}x{1}) vs ({2}x{3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("operation requires a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),

    #[error("quaternion has zero norm; no inverse")]
    ZeroDivisor,

    #[error("matrix is singular or nearly singular (smallest singular value {sigma_min:e} vs scale {scale:e})")]
    Singular { sigma_min: f64, scale: f64 },

    #[error("matrix is not Hermitian (residual {residual:e}, tolerance {tol:e})")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("matrix is not anti-Hermitian (residual {residual:e}, tolerance {tol:e})")]
    NotAntiHermitian { residual: f64, tol: f64 },

    #[error("matrix is not symmetric (residual {residual:e}, tolerance {tol:e})")]
    NotSymmetric { residual: f64, tol: f64 },

    #[error("matrix is not positive (semi)definite (pivot or eigenvalue {value:e})")]
    NotPositiveDefinite { value: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("embedded matrix violates the symplectic block structure (residual {residual:e}, tolerance {tol:e})")]
    StructureViolation { residual: f64, tol: f64 },

    #[error("matrix is numerically defective: {0}")]
    Defective(String),

    #[error("eigenvalue iteration failed to converge")]
    EigenFailed,

    #[error("metric has quaternionic entries; this operation requires a complex metric")]
    MetricNotComplex,

    #[error("operator is not pseudoanti-Hermitian for this metric (residual {residual:e}, tolerance {tol:e})")]
    NotPseudoAntiHermitian { residual: f64, tol: f64 },

    #[error("similarity transform failed to produce an anti-Hermitian operator (residual {residual:e})")]
    SimilarityFailed { residual: f64 },

    #[error("propagator is not eta-unitary (residual {residual:e}, tolerance {tol:e})")]
    EtaUnitarityBreach { residual: f64, tol: f64 },

    #[error("state invariant `{invariant}` violated (residual {residual:e}, tolerance {tol:e})")]
    InvariantBreach {
        invariant: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("state has a quaternionic part; this operation requires a complex state")]
    StateNotComplex,

    #[error("weight list has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dissipator basis is invalid: {0}")]
    BadBasis(String),

    #[error("time grid is invalid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;

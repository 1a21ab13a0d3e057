use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("mode index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("matrix is not symplectic (residual {0:.3e} exceeds tolerance)")]
    NotSymplectic(f64),

    #[error("covariance matrix is not physical (min eigenvalue of sigma + i*Omega is {0:.3e})")]
    NotPhysical(f64),

    #[error("numerical degeneracy: discriminant {0:.3e} below tolerance")]
    NumericalDegeneracy(f64),

    #[error("perturbative expansion breaks down: h = {h:.3e} (requires h < 1)")]
    PerturbationBreakdown { h: f64 },

    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("eigenvalue computation failed: {0}")]
    EigenFailure(String),
}

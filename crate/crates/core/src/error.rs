use thiserror::Error;

/// Errors raised by the framekit algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("all frame vectors are zero")]
    ZeroFrame,

    #[error("index sets differ: {left} vs {right} vectors")]
    IndexMismatch { left: usize, right: usize },

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error(
        "distance identity violated: direct {direct:.17e}, \
         via I-|F| {via_identity:.17e}, via P-|F| {via_projection:.17e}"
    )]
    IdentityMismatch {
        direct: f64,
        via_identity: f64,
        via_projection: f64,
    },

    #[error("system is not a normalized tight frame of the whole domain")]
    NotNormalizedTight,

    #[error("cokernel too small: dim (ran F)^perp = {cokernel_dim} < dim ker F = {kernel_dim}")]
    NoExtension {
        cokernel_dim: usize,
        kernel_dim: usize,
    },

    #[error("bad cokernel columns: {0}")]
    BadCokernel(String),

    #[error("bad size: {0}")]
    BadSize(String),

    #[error("bad family parameter: {0}")]
    BadParameter(String),

    #[error("operation {operation} does not apply to family {family}")]
    WrongFamily {
        operation: &'static str,
        family: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = FrameError> = std::result::Result<T, E>;

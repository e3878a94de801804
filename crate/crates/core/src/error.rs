use thiserror::Error;

/// Errors raised by the matrix toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix data has length {len}, expected {rows}x{cols}")]
    BadShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("SVD did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("operation requires a nonzero matrix")]
    ZeroMatrix,

    #[error("group inverse requires index <= 1, got {index}")]
    IndexTooLarge { index: usize },

    #[error("{inverse} violates its defining equations (residual {residual:.3e})")]
    DefiningEquationsViolated {
        inverse: &'static str,
        residual: f64,
    },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("matrix is not CEPD (residual {residual:.3e})")]
    NotCepd { residual: f64 },

    #[error("matrix is not a partial isometry (residual {residual:.3e})")]
    NotPartialIsometry { residual: f64 },

    #[error("system is inconsistent (residual {residual:.3e})")]
    ConsistencyViolated { residual: f64 },

    #[error("right-hand side is not in the required range (residual {residual:.3e})")]
    RightSideNotInRange { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

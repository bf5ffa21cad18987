use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("index ({row}, {col}) out of bounds for {nrows}x{ncols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    #[error("matrix {name} is not symmetric (max asymmetry {asymmetry:.3e})")]
    NotSymmetric { name: &'static str, asymmetry: f64 },

    #[error("matrix is not positive definite (pivot {pivot:.3e} at column {column})")]
    NotPositiveDefinite { column: usize, pivot: f64 },

    #[error("dense size {requested} entries exceeds the dense cap of {cap} (set SADPREC_DENSE_CAP to override)")]
    DenseCapExceeded { requested: usize, cap: usize },

    #[error("CG breakdown: p.Ap = {curvature:.3e} <= 0, operator is not SPD")]
    CgBreakdown { curvature: f64 },

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps ({found} of {order} eigenvalues isolated)")]
    EigenNoConvergence {
        sweeps: usize,
        found: usize,
        order: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("metadata error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SolverError>;

pub(crate) fn check_len(context: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(SolverError::DimensionMismatch {
            context,
            expected,
            got,
        })
    }
}

//! Sparse saddle-point solvers built around the modified generalized
//! shift-splitting (MGSS) preconditioner.
//!
//! The systems have the form
//!
//! ```text
//! [  A   Bᵀ ] [x]   [ f ]
//! [ -B   C  ] [y] = [-g ]
//! ```
//!
//! with `A` symmetric positive definite and `C` symmetric positive
//! semidefinite. The crate provides CSR kernels and Cholesky factorization,
//! CG / restarted GMRES / stationary iterations, the MGSS, relaxed MGSS and
//! HSS preconditioners, dense eigenvalue tools for checking the preconditioned
//! spectra, and a stabilized Q1–P0 Stokes generator.
//!
//! ```
//! use sadprec::problems::{generate_stokes_q1p0, StokesConfig};
//! use sadprec::{build_preconditioner, gmres_restarted, PrecondSpec, StoppingRule};
//!
//! let sys = generate_stokes_q1p0(&StokesConfig::new(8))?;
//! let prec = build_preconditioner(&sys, PrecondSpec::mgss(0.001, 0.001))?;
//! let report = gmres_restarted(&sys, &sys.rhs(), Some(prec.as_ref()), StoppingRule::default())?;
//! assert!(report.converged);
//! # Ok::<(), sadprec::SolverError>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dense;
pub mod error;
pub mod factor;
pub mod krylov;
pub mod precond;
pub mod problems;
pub mod saddle;
pub mod sparse;
pub mod spectral;
pub mod stationary;
pub mod vector;

pub use dense::DenseMatrix;
pub use error::{Result, SolverError};
pub use factor::{CholeskyFactor, CholeskyOptions};
pub use krylov::{cg, gmres_restarted, stationary_richardson, CgRule, LinearOperator, Preconditioner, SolveReport, StoppingRule};
pub use precond::{build_preconditioner, InnerSolve, PrecondKind, PrecondSpec};
pub use saddle::{assemble_block_saddle, SaddleSystem};
pub use sparse::{CsrMatrix, TripletMatrix};
pub use spectral::{Spectrum, SpectrumSource};

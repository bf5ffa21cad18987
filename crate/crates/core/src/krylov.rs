//! Conjugate gradients, restarted GMRES and the stationary preconditioned
//! Richardson iteration, all reporting through [`SolveReport`].

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dense::{check_dense_cap, DenseMatrix};
use crate::error::{check_len, Result, SolverError};
use crate::sparse::CsrMatrix;
use crate::vector::{axpy, dot, norm2, sub};

/// A square linear map applied matrix-free.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Vec<f64>;
}

impl LinearOperator for CsrMatrix {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.nrows()];
        self.spmv_into(x, &mut y);
        y
    }
}

impl LinearOperator for DenseMatrix {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.matvec(x).expect("operator length")
    }
}

impl<T: LinearOperator + ?Sized> LinearOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        (**self).apply(x)
    }
}

/// Operator defined by a closure.
pub struct FnOperator<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> Vec<f64>> FnOperator<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> Vec<f64>> LinearOperator for FnOperator<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        (self.f)(x)
    }
}

/// Materialize an operator column by column.
pub fn operator_to_dense(op: &dyn LinearOperator) -> Result<DenseMatrix> {
    let n = op.dim();
    check_dense_cap(n, n)?;
    let mut e = vec![0.0; n];
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        e[j] = 1.0;
        columns.push(op.apply(&e));
        e[j] = 0.0;
    }
    DenseMatrix::from_columns(n, &columns)
}

/// `z = P⁻¹ r`. Applications may be inexact, and may therefore fail.
pub trait Preconditioner {
    fn dim(&self) -> usize;
    fn apply(&self, r: &[f64]) -> Result<Vec<f64>>;

    /// Running total of inner CG iterations spent in `apply`.
    fn inner_iterations(&self) -> usize {
        0
    }
}

impl<T: Preconditioner + ?Sized> Preconditioner for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        (**self).apply(r)
    }

    fn inner_iterations(&self) -> usize {
        (**self).inner_iterations()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityPreconditioner(pub usize);

impl Preconditioner for IdentityPreconditioner {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        Ok(r.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Tolerance (or CG reduction factor) met.
    Converged,
    /// Iteration cap reached first.
    MaxIterations,
    /// Residual grew past the divergence guard.
    Diverged,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub converged: bool,
    pub stop: StopReason,
    /// Total Arnoldi steps for GMRES, sweeps for Richardson, iterations for CG.
    pub outer_iterations: usize,
    pub total_inner_cg_iterations: usize,
    /// Residual norms; starts with the initial residual.
    pub residual_history: Vec<f64>,
    pub wall_time: f64,
    pub solution: Vec<f64>,
}

impl SolveReport {
    pub fn final_residual(&self) -> f64 {
        *self.residual_history.last().expect("history is never empty")
    }

    /// Last residual over the first.
    pub fn relative_residual(&self) -> f64 {
        let first = self.residual_history[0];
        if first > 0.0 {
            self.final_residual() / first
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    pub rel_tol: f64,
    /// Cap on outer iterations (total Arnoldi steps for GMRES).
    pub max_outer: usize,
    /// GMRES restart length.
    pub restart: usize,
}

impl Default for StoppingRule {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            max_outer: 10_000,
            restart: 5,
        }
    }
}

impl StoppingRule {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.restart == 0 {
            return Err(SolverError::InvalidParameter("restart must be >= 1".into()));
        }
        Ok(())
    }
}

/// Stop CG once `‖r_k‖ <= ‖r_0‖ / reduction_factor` or after `max_iters` iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgRule {
    pub reduction_factor: f64,
    pub max_iters: usize,
}

impl Default for CgRule {
    /// Residual reduced a hundredfold, at most 40 iterations.
    fn default() -> Self {
        Self {
            reduction_factor: 100.0,
            max_iters: 40,
        }
    }
}

/// Conjugate gradients from a zero initial guess.
///
/// The residual history holds the recursively updated residual norms.
pub fn cg(op: &dyn LinearOperator, b: &[f64], rule: CgRule) -> Result<SolveReport> {
    check_len("cg rhs", op.dim(), b.len())?;
    let start = Instant::now();
    let n = b.len();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut rr = dot(&r, &r);
    let r0 = rr.sqrt();
    let target = r0 / rule.reduction_factor;
    let mut history = vec![r0];
    let mut p = r.clone();
    let mut iters = 0;
    let mut converged = r0 == 0.0;

    while !converged && iters < rule.max_iters {
        let ap = op.apply(&p);
        let curvature = dot(&p, &ap);
        if !(curvature > 0.0) {
            return Err(SolverError::CgBreakdown { curvature });
        }
        let alpha = rr / curvature;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &ap, &mut r);
        iters += 1;
        let rr_new = dot(&r, &r);
        let rnorm = rr_new.sqrt();
        history.push(rnorm);
        if rnorm <= target {
            converged = true;
            break;
        }
        let beta = rr_new / rr;
        rr = rr_new;
        for (pi, ri) in p.iter_mut().zip(&r) {
            *pi = ri + beta * *pi;
        }
    }

    Ok(SolveReport {
        converged,
        stop: if converged {
            StopReason::Converged
        } else {
            StopReason::MaxIterations
        },
        outer_iterations: iters,
        total_inner_cg_iterations: 0,
        residual_history: history,
        wall_time: start.elapsed().as_secs_f64(),
        solution: x,
    })
}

fn givens(a: f64, b: f64) -> (f64, f64) {
    if b == 0.0 {
        (1.0, 0.0)
    } else {
        let r = a.hypot(b);
        (a / r, b / r)
    }
}

/// Right-preconditioned restarted GMRES, zero initial guess.
///
/// Arnoldi uses modified Gram–Schmidt and the small least-squares problem is
/// kept triangular with Givens rotations. The preconditioned directions
/// `z_j = P⁻¹ v_j` are stored and the update is `x += Σ y_j z_j`, so an inexact
/// (slightly nonlinear) preconditioner is accounted for exactly. At the end of
/// every cycle the true residual `‖b − 𝒜x‖` is recomputed, recorded, and used
/// for the stopping test `‖b − 𝒜x‖ <= rel_tol·‖b‖`.
pub fn gmres_restarted(
    op: &dyn LinearOperator,
    b: &[f64],
    precond: Option<&dyn Preconditioner>,
    rule: StoppingRule,
) -> Result<SolveReport> {
    rule.validate()?;
    let n = op.dim();
    check_len("gmres rhs", n, b.len())?;
    if let Some(p) = precond {
        check_len("gmres preconditioner", n, p.dim())?;
    }
    let start = Instant::now();
    let inner_before = precond.map_or(0, |p| p.inner_iterations());

    let mut x = vec![0.0; n];
    let bnorm = norm2(b);
    let target = rule.rel_tol * bnorm;
    let mut r = b.to_vec();
    let mut beta = bnorm;
    let mut history = vec![beta];
    let mut total = 0usize;
    let m = rule.restart;

    let converged = loop {
        if beta <= target {
            break true;
        }
        if total >= rule.max_outer {
            break false;
        }

        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        let mut directions: Vec<Vec<f64>> = Vec::with_capacity(m);
        // Column-major Hessenberg, `h[j]` holds column j (length j + 2).
        let mut h: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut cs: Vec<f64> = Vec::with_capacity(m);
        let mut sn: Vec<f64> = Vec::with_capacity(m);
        let mut g = vec![0.0; m + 1];
        g[0] = beta;
        basis.push(r.iter().map(|v| v / beta).collect());

        let mut steps = 0;
        while steps < m && total < rule.max_outer {
            let j = steps;
            let z = match precond {
                Some(p) => p.apply(&basis[j])?,
                None => basis[j].clone(),
            };
            let mut w = op.apply(&z);
            directions.push(z);
            total += 1;
            steps += 1;

            let wnorm_before = norm2(&w);
            let mut col = vec![0.0; j + 2];
            for (i, v) in basis.iter().enumerate() {
                let hij = dot(&w, v);
                col[i] = hij;
                axpy(-hij, v, &mut w);
            }
            let hnext = norm2(&w);
            col[j + 1] = hnext;

            for i in 0..j {
                let (c, s) = (cs[i], sn[i]);
                let (a, bb) = (col[i], col[i + 1]);
                col[i] = c * a + s * bb;
                col[i + 1] = -s * a + c * bb;
            }
            let (c, s) = givens(col[j], col[j + 1]);
            col[j] = c * col[j] + s * col[j + 1];
            col[j + 1] = 0.0;
            cs.push(c);
            sn.push(s);
            g[j + 1] = -s * g[j];
            g[j] *= c;
            h.push(col);

            let happy = hnext <= 1e-14 * wnorm_before.max(f64::MIN_POSITIVE);
            if happy || g[j + 1].abs() <= target {
                break;
            }
            basis.push(w.iter().map(|v| v / hnext).collect());
        }

        // Back substitution on the rotated triangle.
        let mut y = vec![0.0; steps];
        for i in (0..steps).rev() {
            let mut s = g[i];
            for k in (i + 1)..steps {
                s -= h[k][i] * y[k];
            }
            y[i] = s / h[i][i];
        }
        for (yi, z) in y.iter().zip(&directions) {
            axpy(*yi, z, &mut x);
        }
        r = sub(b, &op.apply(&x));
        beta = norm2(&r);
        history.push(beta);
    };

    Ok(SolveReport {
        converged,
        stop: if converged {
            StopReason::Converged
        } else {
            StopReason::MaxIterations
        },
        outer_iterations: total,
        total_inner_cg_iterations: precond.map_or(0, |p| p.inner_iterations()) - inner_before,
        residual_history: history,
        wall_time: start.elapsed().as_secs_f64(),
        solution: x,
    })
}

/// Preconditioned Richardson iteration `u ← u + P⁻¹(b − 𝒜u)` from zero.
///
/// With `P = M` for a splitting `𝒜 = M − N` this is exactly `M u⁺ = N u + b`.
/// A residual that grows past ten times the initial one stops the run with
/// [`StopReason::Diverged`].
pub fn stationary_richardson(
    op: &dyn LinearOperator,
    b: &[f64],
    precond: &dyn Preconditioner,
    rule: StoppingRule,
) -> Result<SolveReport> {
    rule.validate()?;
    let n = op.dim();
    check_len("richardson rhs", n, b.len())?;
    check_len("richardson preconditioner", n, precond.dim())?;
    let start = Instant::now();
    let inner_before = precond.inner_iterations();

    let mut u = vec![0.0; n];
    let r0 = norm2(b);
    let target = rule.rel_tol * r0;
    let mut r = b.to_vec();
    let mut rnorm = r0;
    let mut history = vec![r0];
    let mut iters = 0;

    let stop = loop {
        if rnorm <= target {
            break StopReason::Converged;
        }
        if rnorm > 10.0 * r0 {
            break StopReason::Diverged;
        }
        if iters >= rule.max_outer {
            break StopReason::MaxIterations;
        }
        let z = precond.apply(&r)?;
        axpy(1.0, &z, &mut u);
        r = sub(b, &op.apply(&u));
        rnorm = norm2(&r);
        history.push(rnorm);
        iters += 1;
    };

    Ok(SolveReport {
        converged: stop == StopReason::Converged,
        stop,
        outer_iterations: iters,
        total_inner_cg_iterations: precond.inner_iterations() - inner_before,
        residual_history: history,
        wall_time: start.elapsed().as_secs_f64(),
        solution: u,
    })
}

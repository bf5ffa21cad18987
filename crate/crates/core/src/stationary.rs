//! The MGSS splitting `𝒜 = M − N` and its stationary iteration `M u⁺ = N u + b`.

use crate::error::{Result, SolverError};
use crate::krylov::{stationary_richardson, LinearOperator, Preconditioner, SolveReport, StoppingRule};
use crate::precond::{assemble_preconditioner, InnerSolve, MgssApplicator, PrecondKind, PrecondSpec};
use crate::saddle::{assemble_block_saddle, SaddleSystem};
use crate::sparse::CsrMatrix;
use crate::vector::sub;

/// `Γ = M⁻¹N = I − M⁻¹𝒜`, applied without forming it.
pub struct IterationMatrixOperator<'a> {
    sys: &'a SaddleSystem,
    app: MgssApplicator<'a>,
}

impl<'a> IterationMatrixOperator<'a> {
    /// Only exact (DIRECT) inner solves keep `Γ` linear; the spec's inner mode is overridden.
    pub fn new(sys: &'a SaddleSystem, alpha: f64, beta: f64) -> Result<Self> {
        let spec = PrecondSpec::mgss(alpha, beta).with_inner(InnerSolve::Direct);
        Ok(Self {
            sys,
            app: MgssApplicator::new(sys, spec)?,
        })
    }

    pub fn applicator(&self) -> &MgssApplicator<'a> {
        &self.app
    }
}

impl LinearOperator for IterationMatrixOperator<'_> {
    fn dim(&self) -> usize {
        self.sys.order()
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let av = LinearOperator::apply(self.sys, v);
        let z = self
            .app
            .apply(&av)
            .expect("direct-mode applications only fail on dimension mismatch");
        sub(v, &z)
    }
}

/// `Γ v`.
pub fn gamma_apply(op: &IterationMatrixOperator<'_>, v: &[f64]) -> Result<Vec<f64>> {
    crate::error::check_len("gamma apply", op.dim(), v.len())?;
    Ok(LinearOperator::apply(op, v))
}

/// `(M, N)` with `M = ½[[αI + A, Bᵀ], [−B, βI + C]]` and `N = M − 𝒜`.
pub fn splitting_matrices(sys: &SaddleSystem, alpha: f64, beta: f64) -> Result<(CsrMatrix, CsrMatrix)> {
    let m = assemble_preconditioner(sys, PrecondSpec::mgss(alpha, beta))?;
    let n = m.linear_combination(1.0, &assemble_block_saddle(sys), -1.0)?;
    Ok((m, n))
}

/// Run the MGSS stationary scheme on `sys` from a zero initial guess.
pub fn run_mgss_iteration(sys: &SaddleSystem, spec: PrecondSpec, rule: StoppingRule) -> Result<SolveReport> {
    if spec.kind != PrecondKind::Mgss {
        return Err(SolverError::InvalidParameter(format!(
            "stationary iteration needs an mgss splitting, got {}",
            spec.kind
        )));
    }
    let app = MgssApplicator::new(sys, spec)?;
    stationary_richardson(sys, &sys.rhs(), &app as &dyn Preconditioner, rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DenseMatrix;

    fn toy() -> SaddleSystem {
        SaddleSystem::new(
            CsrMatrix::from_triplets(1, 1, &[(0, 0, 2.0)]).unwrap(),
            CsrMatrix::from_triplets(1, 1, &[(0, 0, 1.0)]).unwrap(),
            CsrMatrix::zeros(1, 1),
            vec![1.0],
            vec![0.0],
        )
        .unwrap()
    }

    #[test]
    fn toy_gamma_values() {
        let sys = toy();
        let op = IterationMatrixOperator::new(&sys, 1.0, 1.0).unwrap();
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        assert!(close(&gamma_apply(&op, &[1.0, 0.0]).unwrap(), &[-0.5, 0.5]));
        assert_eq!(gamma_apply(&op, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        assert!(close(&gamma_apply(&op, &[1.0, -1.0]).unwrap(), &[0.0, 0.0]));
        assert!(gamma_apply(&op, &[1.0]).is_err());
    }

    #[test]
    fn toy_splitting() {
        let sys = toy();
        let (m, n) = splitting_matrices(&sys, 1.0, 1.0).unwrap();
        assert_eq!(m.to_dense().unwrap(), DenseMatrix::from_rows(&[&[1.5, 0.5], &[-0.5, 0.5]]));
        assert_eq!(n.to_dense().unwrap(), DenseMatrix::from_rows(&[&[-0.5, -0.5], &[0.5, 0.5]]));
    }

    #[test]
    fn toy_iteration_is_exact_in_two_steps() {
        let sys = toy();
        let rep = run_mgss_iteration(&sys, PrecondSpec::mgss(1.0, 1.0).direct(), StoppingRule::default()).unwrap();
        assert!(rep.converged);
        assert!(rep.outer_iterations <= 2);
        assert!(rep.solution[0].abs() < 1e-15 && (rep.solution[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_cap_returns_initial_guess() {
        let sys = toy();
        let rule = StoppingRule {
            max_outer: 0,
            ..Default::default()
        };
        let rep = run_mgss_iteration(&sys, PrecondSpec::mgss(1.0, 1.0), rule).unwrap();
        assert!(!rep.converged);
        assert_eq!(rep.solution, vec![0.0, 0.0]);
    }

    #[test]
    fn rejects_other_kinds() {
        assert!(run_mgss_iteration(&toy(), PrecondSpec::rmgss(1.0), StoppingRule::default()).is_err());
    }
}

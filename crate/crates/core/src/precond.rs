//! Preconditioners for the saddle-point system.
//!
//! * MGSS: `M = ½ [[αI + A, Bᵀ], [−B, βI + C]]`, applied through the block
//!   factorization with Schur complement `S = αI + A + Bᵀ(βI + C)⁻¹B`.
//! * RMGSS: `P = [[A, Bᵀ], [−B, βI + C]]`, the same procedure with `α = 0` and
//!   no factor two.
//! * HSS: `P = (1/2α)(αI + ℋ)(αI + 𝒮)` with `ℋ = diag(A, C)` and
//!   `𝒮 = [[0, Bᵀ], [−B, 0]]`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::dense::{check_dense_cap, DenseMatrix};
use crate::error::{check_len, Result, SolverError};
use crate::factor::CholeskyFactor;
use crate::krylov::{cg, CgRule, IdentityPreconditioner, LinearOperator, Preconditioner};
use crate::saddle::SaddleSystem;
use crate::sparse::{CsrMatrix, TripletMatrix};
use crate::vector::{self, axpy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrecondKind {
    Mgss,
    Rmgss,
    Hss,
    None,
}

impl PrecondKind {
    pub fn name(self) -> &'static str {
        match self {
            PrecondKind::Mgss => "mgss",
            PrecondKind::Rmgss => "rmgss",
            PrecondKind::Hss => "hss",
            PrecondKind::None => "none",
        }
    }
}

impl fmt::Display for PrecondKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrecondKind {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mgss" => Ok(PrecondKind::Mgss),
            "rmgss" => Ok(PrecondKind::Rmgss),
            "hss" => Ok(PrecondKind::Hss),
            "none" => Ok(PrecondKind::None),
            other => Err(SolverError::InvalidParameter(format!(
                "unknown preconditioner '{other}' (expected none, mgss, rmgss or hss)"
            ))),
        }
    }
}

/// How the inner SPD systems are solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerSolve {
    /// Inexact conjugate gradients.
    Cg(CgRule),
    /// Explicitly formed matrix and Cholesky; the preconditioner is then exactly linear.
    Direct,
}

impl Default for InnerSolve {
    fn default() -> Self {
        InnerSolve::Cg(CgRule::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecondSpec {
    pub kind: PrecondKind,
    pub alpha: f64,
    pub beta: f64,
    pub inner: InnerSolve,
}

impl PrecondSpec {
    pub fn mgss(alpha: f64, beta: f64) -> Self {
        Self {
            kind: PrecondKind::Mgss,
            alpha,
            beta,
            inner: InnerSolve::default(),
        }
    }

    pub fn rmgss(beta: f64) -> Self {
        Self {
            kind: PrecondKind::Rmgss,
            alpha: 0.0,
            beta,
            inner: InnerSolve::default(),
        }
    }

    pub fn hss(alpha: f64) -> Self {
        Self {
            kind: PrecondKind::Hss,
            alpha,
            beta: 0.0,
            inner: InnerSolve::default(),
        }
    }

    pub fn none() -> Self {
        Self {
            kind: PrecondKind::None,
            alpha: 0.0,
            beta: 0.0,
            inner: InnerSolve::default(),
        }
    }

    pub fn with_inner(mut self, inner: InnerSolve) -> Self {
        self.inner = inner;
        self
    }

    pub fn direct(self) -> Self {
        self.with_inner(InnerSolve::Direct)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(SolverError::InvalidParameter(format!(
                    "{} requires {name} > 0, got {v}",
                    self.kind
                )))
            }
        };
        match self.kind {
            PrecondKind::Mgss => {
                positive("alpha", self.alpha)?;
                positive("beta", self.beta)
            }
            PrecondKind::Rmgss => {
                if self.alpha != 0.0 {
                    return Err(SolverError::InvalidParameter(format!(
                        "rmgss fixes alpha = 0, got {}",
                        self.alpha
                    )));
                }
                positive("beta", self.beta)
            }
            PrecondKind::Hss => positive("alpha", self.alpha),
            PrecondKind::None => Ok(()),
        }
    }
}

fn solve_spd(
    op: &dyn LinearOperator,
    factor: Option<&CholeskyFactor>,
    rhs: &[f64],
    rule: CgRule,
    counter: &AtomicUsize,
) -> Result<Vec<f64>> {
    match factor {
        Some(f) => f.solve(rhs),
        None => {
            let rep = cg(op, rhs, rule)?;
            counter.fetch_add(rep.outer_iterations, AtomicOrdering::Relaxed);
            Ok(rep.solution)
        }
    }
}

/// `x ↦ αx + Ax + Bᵀ(βI + C)⁻¹Bx`, symmetric positive definite.
pub struct SchurOperator<'a> {
    a: &'a CsrMatrix,
    b: &'a CsrMatrix,
    shifted_c: &'a CholeskyFactor,
    alpha: f64,
}

impl<'a> SchurOperator<'a> {
    pub fn new(sys: &'a SaddleSystem, shifted_c: &'a CholeskyFactor, alpha: f64) -> Result<Self> {
        check_len("schur factor", sys.m(), shifted_c.size())?;
        Ok(Self {
            a: sys.a(),
            b: sys.b(),
            shifted_c,
            alpha,
        })
    }
}

impl LinearOperator for SchurOperator<'_> {
    fn dim(&self) -> usize {
        self.a.nrows()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = LinearOperator::apply(self.a, x);
        axpy(self.alpha, x, &mut y);
        let bx = LinearOperator::apply(self.b, x);
        let t = self.shifted_c.solve(&bx).expect("factor sized to B rows");
        let btt = self.b.spmv_transpose(&t).expect("B shape fixed");
        axpy(1.0, &btt, &mut y);
        y
    }
}

/// Explicit `S = αI + A + Bᵀ(βI + C)⁻¹B`.
pub fn form_schur_dense(sys: &SaddleSystem, alpha: f64, beta: f64) -> Result<DenseMatrix> {
    let n = sys.n();
    check_dense_cap(n, n)?;
    let factor = CholeskyFactor::new(&sys.c().shifted(beta)?)?;
    form_schur_with(sys, &factor, alpha)
}

fn form_schur_with(sys: &SaddleSystem, shifted_c: &CholeskyFactor, alpha: f64) -> Result<DenseMatrix> {
    let n = sys.n();
    check_dense_cap(n, n)?;
    let mut s = sys.a().to_dense()?;
    for i in 0..n {
        s[(i, i)] += alpha;
    }
    let bt = sys.b().transpose();
    let mut col = vec![0.0; sys.m()];
    for j in 0..n {
        // Column j of B is row j of Bᵀ.
        let (rows, vals) = bt.row(j);
        if rows.is_empty() {
            continue;
        }
        col.iter_mut().for_each(|v| *v = 0.0);
        for (&i, &v) in rows.iter().zip(vals) {
            col[i] = v;
        }
        let t = shifted_c.solve(&col)?;
        let btt = sys.b().spmv_transpose(&t)?;
        for (i, v) in btt.iter().enumerate() {
            s[(i, j)] += v;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (s[(i, j)] + s[(j, i)]);
            s[(i, j)] = avg;
            s[(j, i)] = avg;
        }
    }
    Ok(s)
}

/// Applies `M⁻¹` for MGSS (or `P⁻¹` for RMGSS) in five steps:
///
/// 1. solve `(βI + C) w = s·r₂`
/// 2. `w₁ = s·r₁ − Bᵀw`
/// 3. solve `S z₁ = w₁`
/// 4. solve `(βI + C) v = B z₁`
/// 5. `z₂ = v + w`
///
/// with `s = 2` for MGSS and `s = 1`, `α = 0` for RMGSS.
pub struct MgssApplicator<'a> {
    sys: &'a SaddleSystem,
    spec: PrecondSpec,
    shifted_c: CholeskyFactor,
    schur_factor: Option<CholeskyFactor>,
    inner_iters: AtomicUsize,
}

impl<'a> MgssApplicator<'a> {
    pub fn new(sys: &'a SaddleSystem, spec: PrecondSpec) -> Result<Self> {
        spec.validate()?;
        if !matches!(spec.kind, PrecondKind::Mgss | PrecondKind::Rmgss) {
            return Err(SolverError::InvalidParameter(format!(
                "shift-splitting applicator cannot apply {}",
                spec.kind
            )));
        }
        let shifted_c = CholeskyFactor::new(&sys.c().shifted(spec.beta)?)?;
        let schur_factor = match spec.inner {
            InnerSolve::Direct => Some(CholeskyFactor::from_dense(&form_schur_with(
                sys, &shifted_c, spec.alpha,
            )?)?),
            InnerSolve::Cg(_) => None,
        };
        Ok(Self {
            sys,
            spec,
            shifted_c,
            schur_factor,
            inner_iters: AtomicUsize::new(0),
        })
    }

    pub fn spec(&self) -> &PrecondSpec {
        &self.spec
    }

    pub fn is_linear(&self) -> bool {
        self.schur_factor.is_some()
    }

    pub fn schur_operator(&self) -> SchurOperator<'_> {
        SchurOperator {
            a: self.sys.a(),
            b: self.sys.b(),
            shifted_c: &self.shifted_c,
            alpha: self.spec.alpha,
        }
    }

    fn scale(&self) -> f64 {
        if self.spec.kind == PrecondKind::Mgss {
            2.0
        } else {
            1.0
        }
    }
}

impl Preconditioner for MgssApplicator<'_> {
    fn dim(&self) -> usize {
        self.sys.order()
    }

    fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        check_len("mgss apply", self.sys.order(), r.len())?;
        let (r1, r2) = self.sys.split(r);
        let s = self.scale();
        let rule = match self.spec.inner {
            InnerSolve::Cg(rule) => rule,
            InnerSolve::Direct => CgRule::default(),
        };

        let w = self.shifted_c.solve(&vector::scaled(s, r2))?;
        let mut w1 = vector::scaled(s, r1);
        axpy(-1.0, &self.sys.b().spmv_transpose(&w)?, &mut w1);
        let z1 = solve_spd(
            &self.schur_operator(),
            self.schur_factor.as_ref(),
            &w1,
            rule,
            &self.inner_iters,
        )?;
        let v = self.shifted_c.solve(&self.sys.b().spmv(&z1)?)?;
        let z2 = vector::add(&v, &w);
        Ok(vector::concat(&z1, &z2))
    }

    fn inner_iterations(&self) -> usize {
        self.inner_iters.load(AtomicOrdering::Relaxed)
    }
}

/// `αI + M` as an operator, for the CG-based HSS inner solves.
struct ShiftedOperator<'a> {
    m: &'a CsrMatrix,
    shift: f64,
}

impl LinearOperator for ShiftedOperator<'_> {
    fn dim(&self) -> usize {
        self.m.nrows()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = LinearOperator::apply(self.m, x);
        axpy(self.shift, x, &mut y);
        y
    }
}

/// `x ↦ α²x + BBᵀx` without forming `BBᵀ`.
struct NormalOperator<'a> {
    b: &'a CsrMatrix,
    alpha_sq: f64,
}

impl LinearOperator for NormalOperator<'_> {
    fn dim(&self) -> usize {
        self.b.nrows()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let btx = self.b.spmv_transpose(x).expect("length m");
        let mut y = LinearOperator::apply(self.b, &btx);
        axpy(self.alpha_sq, x, &mut y);
        y
    }
}

struct HssFactors {
    shifted_a: CholeskyFactor,
    shifted_c: CholeskyFactor,
    normal: CholeskyFactor,
}

/// Applies `P_HSS⁻¹ = 2α (αI + 𝒮)⁻¹ (αI + ℋ)⁻¹`.
///
/// The skew solve eliminates the first block:
/// `(α²I + BBᵀ) z₂ = α t₂ + B t₁`, then `z₁ = (t₁ − Bᵀz₂)/α`.
pub struct HssApplicator<'a> {
    sys: &'a SaddleSystem,
    spec: PrecondSpec,
    factors: Option<HssFactors>,
    inner_iters: AtomicUsize,
}

impl<'a> HssApplicator<'a> {
    pub fn new(sys: &'a SaddleSystem, spec: PrecondSpec) -> Result<Self> {
        spec.validate()?;
        if spec.kind != PrecondKind::Hss {
            return Err(SolverError::InvalidParameter(format!(
                "HSS applicator cannot apply {}",
                spec.kind
            )));
        }
        let alpha = spec.alpha;
        let factors = match spec.inner {
            InnerSolve::Direct => {
                let bbt = sys.b().matmul(&sys.b().transpose())?;
                Some(HssFactors {
                    shifted_a: CholeskyFactor::new(&sys.a().shifted(alpha)?)?,
                    shifted_c: CholeskyFactor::new(&sys.c().shifted(alpha)?)?,
                    normal: CholeskyFactor::new(&bbt.shifted(alpha * alpha)?)?,
                })
            }
            InnerSolve::Cg(_) => None,
        };
        Ok(Self {
            sys,
            spec,
            factors,
            inner_iters: AtomicUsize::new(0),
        })
    }
}

impl Preconditioner for HssApplicator<'_> {
    fn dim(&self) -> usize {
        self.sys.order()
    }

    fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        check_len("hss apply", self.sys.order(), r.len())?;
        let alpha = self.spec.alpha;
        let (r1, r2) = self.sys.split(r);
        let rule = match self.spec.inner {
            InnerSolve::Cg(rule) => rule,
            InnerSolve::Direct => CgRule::default(),
        };
        let f = self.factors.as_ref();
        let counter = &self.inner_iters;

        let shifted_a = ShiftedOperator {
            m: self.sys.a(),
            shift: alpha,
        };
        let shifted_c = ShiftedOperator {
            m: self.sys.c(),
            shift: alpha,
        };
        let t1 = solve_spd(&shifted_a, f.map(|f| &f.shifted_a), r1, rule, counter)?;
        let t2 = solve_spd(&shifted_c, f.map(|f| &f.shifted_c), r2, rule, counter)?;

        let mut rhs = vector::scaled(alpha, &t2);
        axpy(1.0, &self.sys.b().spmv(&t1)?, &mut rhs);
        let normal = NormalOperator {
            b: self.sys.b(),
            alpha_sq: alpha * alpha,
        };
        let z2 = solve_spd(&normal, f.map(|f| &f.normal), &rhs, rule, counter)?;
        let mut z1 = t1;
        axpy(-1.0, &self.sys.b().spmv_transpose(&z2)?, &mut z1);

        let mut z = vector::concat(&z1, &z2);
        // 2α·(z₁/α; z₂)
        let (top, bottom) = z.split_at_mut(self.sys.n());
        vector::scale(2.0, top);
        vector::scale(2.0 * alpha, bottom);
        Ok(z)
    }

    fn inner_iterations(&self) -> usize {
        self.inner_iters.load(AtomicOrdering::Relaxed)
    }
}

/// Build the applicator described by `spec`.
pub fn build_preconditioner<'a>(
    sys: &'a SaddleSystem,
    spec: PrecondSpec,
) -> Result<Box<dyn Preconditioner + Send + Sync + 'a>> {
    spec.validate()?;
    Ok(match spec.kind {
        PrecondKind::Mgss | PrecondKind::Rmgss => Box::new(MgssApplicator::new(sys, spec)?),
        PrecondKind::Hss => Box::new(HssApplicator::new(sys, spec)?),
        PrecondKind::None => Box::new(IdentityPreconditioner(sys.order())),
    })
}

/// The preconditioning matrix `P` itself, assembled in CSR form.
pub fn assemble_preconditioner(sys: &SaddleSystem, spec: PrecondSpec) -> Result<CsrMatrix> {
    spec.validate()?;
    let n = sys.n();
    let order = sys.order();
    let mut t = TripletMatrix::with_capacity(order, order, sys.a().nnz() + 2 * sys.b().nnz() + sys.c().nnz() + order);
    match spec.kind {
        PrecondKind::None => return Ok(CsrMatrix::identity(order)),
        PrecondKind::Mgss | PrecondKind::Rmgss => {
            let s = if spec.kind == PrecondKind::Mgss { 0.5 } else { 1.0 };
            for (i, j, v) in sys.a().triplets() {
                t.push(i, j, s * v)?;
            }
            for (i, j, v) in sys.b().triplets() {
                t.push(j, n + i, s * v)?;
                t.push(n + i, j, -s * v)?;
            }
            for (i, j, v) in sys.c().triplets() {
                t.push(n + i, n + j, s * v)?;
            }
            for i in 0..n {
                t.push(i, i, s * spec.alpha)?;
            }
            for i in 0..sys.m() {
                t.push(n + i, n + i, s * spec.beta)?;
            }
        }
        PrecondKind::Hss => {
            let alpha = spec.alpha;
            let mut h = TripletMatrix::new(order, order);
            let mut skew = TripletMatrix::new(order, order);
            for (i, j, v) in sys.a().triplets() {
                h.push(i, j, v)?;
            }
            for (i, j, v) in sys.c().triplets() {
                h.push(n + i, n + j, v)?;
            }
            for (i, j, v) in sys.b().triplets() {
                skew.push(j, n + i, v)?;
                skew.push(n + i, j, -v)?;
            }
            let h = h.to_csr().shifted(alpha)?;
            let skew = skew.to_csr().shifted(alpha)?;
            return Ok(h.matmul(&skew)?.scaled(0.5 / alpha));
        }
    }
    Ok(t.to_csr())
}

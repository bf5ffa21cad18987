//! The block system `[[A, Bᵀ], [-B, C]] (x; y) = (f; -g)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_len, Result, SolverError};
use crate::factor::CholeskyFactor;
use crate::krylov::LinearOperator;
use crate::sparse::{CsrMatrix, TripletMatrix};
use crate::vector;

/// Relative tolerance for the symmetry check on `A` and `C`.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SaddleSystem {
    a: CsrMatrix,
    b: CsrMatrix,
    c: CsrMatrix,
    f: Vec<f64>,
    g: Vec<f64>,
}

impl SaddleSystem {
    /// Validates block shapes, `m <= n` and the symmetry of `A` and `C`.
    pub fn new(a: CsrMatrix, b: CsrMatrix, c: CsrMatrix, f: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        let n = a.nrows();
        let m = b.nrows();
        check_len("A columns", n, a.ncols())?;
        check_len("B columns", n, b.ncols())?;
        check_len("C rows", m, c.nrows())?;
        check_len("C columns", m, c.ncols())?;
        check_len("f", n, f.len())?;
        check_len("g", m, g.len())?;
        if m > n {
            return Err(SolverError::InvalidParameter(format!(
                "saddle system needs m <= n, got m={m}, n={n}"
            )));
        }
        if !a.is_symmetric(SYMMETRY_TOL) {
            return Err(SolverError::NotSymmetric {
                name: "A",
                asymmetry: a.max_asymmetry(),
            });
        }
        if !c.is_symmetric(SYMMETRY_TOL) {
            return Err(SolverError::NotSymmetric {
                name: "C",
                asymmetry: c.max_asymmetry(),
            });
        }
        Ok(Self { a, b, c, f, g })
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn m(&self) -> usize {
        self.b.nrows()
    }

    pub fn order(&self) -> usize {
        self.n() + self.m()
    }

    pub fn a(&self) -> &CsrMatrix {
        &self.a
    }

    pub fn b(&self) -> &CsrMatrix {
        &self.b
    }

    pub fn c(&self) -> &CsrMatrix {
        &self.c
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// Right-hand side `(f; -g)`.
    pub fn rhs(&self) -> Vec<f64> {
        let neg_g = vector::scaled(-1.0, &self.g);
        vector::concat(&self.f, &neg_g)
    }

    /// Same blocks, new right-hand side.
    pub fn with_rhs(&self, f: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        check_len("f", self.n(), f.len())?;
        check_len("g", self.m(), g.len())?;
        Ok(Self {
            f,
            g,
            ..self.clone()
        })
    }

    /// Split a full-length vector into its `(x, y)` blocks.
    pub fn split<'v>(&self, u: &'v [f64]) -> (&'v [f64], &'v [f64]) {
        u.split_at(self.n())
    }

    /// Positive definiteness of `A`, checked by attempting a Cholesky factorization.
    pub fn check_a_spd(&self) -> Result<()> {
        CholeskyFactor::new(&self.a).map(|_| ())
    }

    /// Probe `x·Cx >= -tol·‖x‖²` on `samples` fixed-seed random vectors.
    pub fn check_c_spsd(&self, samples: usize, tol: f64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..samples).all(|_| {
            let x: Vec<f64> = (0..self.m()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let cx = self.c.spmv(&x).expect("C is m x m");
            vector::dot(&x, &cx) >= -tol * vector::dot(&x, &x)
        })
    }

    /// `𝒜 u` without assembling the block matrix.
    pub fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        check_len("saddle apply", self.order(), u.len())?;
        let mut out = vec![0.0; self.order()];
        self.apply_into(u, &mut out);
        Ok(out)
    }

    fn apply_into(&self, u: &[f64], out: &mut [f64]) {
        let (x, y) = self.split(u);
        let (top, bottom) = out.split_at_mut(self.n());
        self.a.spmv_into(x, top);
        let mut bty = vec![0.0; self.n()];
        self.b.spmv_transpose_into(y, &mut bty);
        vector::axpy(1.0, &bty, top);
        self.c.spmv_into(y, bottom);
        let mut bx = vec![0.0; self.m()];
        self.b.spmv_into(x, &mut bx);
        vector::axpy(-1.0, &bx, bottom);
    }

    /// Relative true residual `‖b - 𝒜u‖ / ‖b‖` (absolute when `b = 0`).
    pub fn relative_residual(&self, u: &[f64]) -> Result<f64> {
        let rhs = self.rhs();
        let r = vector::sub(&rhs, &self.apply(u)?);
        let nb = vector::norm2(&rhs);
        Ok(if nb > 0.0 {
            vector::norm2(&r) / nb
        } else {
            vector::norm2(&r)
        })
    }
}

impl LinearOperator for SaddleSystem {
    fn dim(&self) -> usize {
        self.order()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.order()];
        self.apply_into(x, &mut out);
        out
    }
}

/// Assemble `𝒜 = [[A, Bᵀ], [-B, C]]` as one `(n+m)×(n+m)` CSR matrix.
pub fn assemble_block_saddle(sys: &SaddleSystem) -> CsrMatrix {
    let n = sys.n();
    let nnz = sys.a.nnz() + 2 * sys.b.nnz() + sys.c.nnz();
    let mut t = TripletMatrix::with_capacity(sys.order(), sys.order(), nnz);
    let mut put = |i: usize, j: usize, v: f64| {
        t.push(i, j, v).expect("block indices lie inside the saddle order");
    };
    for (i, j, v) in sys.a.triplets() {
        put(i, j, v);
    }
    for (i, j, v) in sys.b.triplets() {
        put(j, n + i, v);
        put(n + i, j, -v);
    }
    for (i, j, v) in sys.c.triplets() {
        put(n + i, n + j, v);
    }
    t.to_csr()
}

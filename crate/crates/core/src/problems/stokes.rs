//! Stabilized Q1–P0 discretization of the Stokes problem on `[-1, 1]²`.
//!
//! Reference flow: `u = (20xy³, 5x⁴ − 5y⁴)`, `p = 60x²y − 20y³`. It satisfies
//! `−Δu + ∇p = 0` and `∇·u = 0`, so the body force vanishes and all data enters
//! through the Dirichlet velocity interpolant on the boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::saddle::SaddleSystem;
use crate::sparse::TripletMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesConfig {
    /// Elements per side; even, so the mesh tiles into 2×2 macroelements.
    pub q: usize,
    /// Scaling of the pressure-jump stabilization.
    pub stab_param: f64,
    /// Drop the last pressure unknown to remove the constant-pressure mode.
    pub pin_pressure: bool,
}

impl StokesConfig {
    pub fn new(q: usize) -> Self {
        Self {
            q,
            stab_param: 0.25,
            pin_pressure: true,
        }
    }

    pub fn unpinned(q: usize) -> Self {
        Self {
            pin_pressure: false,
            ..Self::new(q)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 2 || !self.q.is_multiple_of(2) {
            return Err(SolverError::InvalidParameter(format!(
                "Stokes grid size q must be even and >= 2, got {}",
                self.q
            )));
        }
        if !(self.stab_param >= 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "stabilization parameter must be non-negative, got {}",
                self.stab_param
            )));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        2.0 / self.q as f64
    }

    pub fn velocity_dofs(&self) -> usize {
        2 * (self.q + 1) * (self.q + 1)
    }

    pub fn pressure_dofs(&self) -> usize {
        self.q * self.q - usize::from(self.pin_pressure)
    }
}

/// Q1 stiffness of `−Δ` on a square element (independent of `h` in 2-D),
/// local nodes counterclockwise from the lower-left corner.
const Q1_STIFFNESS: [[f64; 4]; 4] = [
    [4.0 / 6.0, -1.0 / 6.0, -2.0 / 6.0, -1.0 / 6.0],
    [-1.0 / 6.0, 4.0 / 6.0, -1.0 / 6.0, -2.0 / 6.0],
    [-2.0 / 6.0, -1.0 / 6.0, 4.0 / 6.0, -1.0 / 6.0],
    [-1.0 / 6.0, -2.0 / 6.0, -1.0 / 6.0, 4.0 / 6.0],
];

/// `∫_K ∂φ_a/∂x` and `∫_K ∂φ_a/∂y` in units of `h/2`.
const DX_SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
const DY_SIGN: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

/// Macroelement pressure-jump pattern on the 4-cycle of elements in a 2×2 tile.
const MACRO_JUMP: [[f64; 4]; 4] = [
    [2.0, -1.0, 0.0, -1.0],
    [-1.0, 2.0, -1.0, 0.0],
    [0.0, -1.0, 2.0, -1.0],
    [-1.0, 0.0, -1.0, 2.0],
];

pub fn exact_velocity(x: f64, y: f64) -> (f64, f64) {
    (20.0 * x * y.powi(3), 5.0 * x.powi(4) - 5.0 * y.powi(4))
}

pub fn exact_pressure(x: f64, y: f64) -> f64 {
    60.0 * x * x * y - 20.0 * y.powi(3)
}

/// Nodal interpolant of the reference velocity, laid out as `(u_x; u_y)`.
pub fn stokes_exact_velocity(q: usize) -> Vec<f64> {
    let np = q + 1;
    let h = 2.0 / q as f64;
    let mut u = vec![0.0; 2 * np * np];
    for j in 0..np {
        for i in 0..np {
            let (ux, uy) = exact_velocity(-1.0 + i as f64 * h, -1.0 + j as f64 * h);
            u[j * np + i] = ux;
            u[np * np + j * np + i] = uy;
        }
    }
    u
}

/// Assemble `A`, `B`, `C`, `f`, `g` on a uniform `q×q` mesh.
///
/// Dirichlet conditions are imposed symmetrically: boundary rows and columns
/// of `A` become identity rows, boundary columns of `B` are removed and the
/// lifted boundary values move into `f` and `g`. The velocity count stays
/// `n = 2(q+1)²`; pressures number `q²` (or `q² − 1` when pinned).
pub fn generate_stokes_q1p0(cfg: &StokesConfig) -> Result<SaddleSystem> {
    cfg.validate()?;
    let q = cfg.q;
    let np = q + 1;
    let nodes = np * np;
    let n = 2 * nodes;
    let m_full = q * q;
    let h = cfg.h();

    let node = |i: usize, j: usize| j * np + i;
    let on_boundary = |k: usize| {
        let (i, j) = (k % np, k / np);
        i == 0 || j == 0 || i == q || j == q
    };
    let exact = stokes_exact_velocity(q);
    let is_fixed = |dof: usize| on_boundary(dof % nodes);

    let mut a = TripletMatrix::with_capacity(n, n, 32 * q * q);
    let mut b = TripletMatrix::with_capacity(m_full, n, 8 * q * q);
    let mut f = vec![0.0; n];
    let mut g = vec![0.0; m_full];

    for ej in 0..q {
        for ei in 0..q {
            let elem = ej * q + ei;
            let local = [
                node(ei, ej),
                node(ei + 1, ej),
                node(ei + 1, ej + 1),
                node(ei, ej + 1),
            ];
            for comp in 0..2 {
                let offset = comp * nodes;
                for (ra, &na) in local.iter().enumerate() {
                    let row = offset + na;
                    if is_fixed(row) {
                        continue;
                    }
                    for (cb, &nb) in local.iter().enumerate() {
                        let col = offset + nb;
                        let v = Q1_STIFFNESS[ra][cb];
                        if is_fixed(col) {
                            f[row] -= v * exact[col];
                        } else {
                            a.push(row, col, v)?;
                        }
                    }
                }
            }
            // B = −∫ q ∇·u, one row per element.
            for (la, &na) in local.iter().enumerate() {
                for (comp, signs) in [DX_SIGN, DY_SIGN].iter().enumerate() {
                    let col = comp * nodes + na;
                    let v = -signs[la] * h / 2.0;
                    if is_fixed(col) {
                        g[elem] -= v * exact[col];
                    } else {
                        b.push(elem, col, v)?;
                    }
                }
            }
        }
    }
    for dof in (0..n).filter(|&d| is_fixed(d)) {
        a.push(dof, dof, 1.0)?;
        f[dof] = exact[dof];
    }

    let mut c = TripletMatrix::with_capacity(m_full, m_full, 3 * m_full);
    let scale = cfg.stab_param * h * h / 4.0;
    for tj in 0..q / 2 {
        for ti in 0..q / 2 {
            let (ei, ej) = (2 * ti, 2 * tj);
            let tile = [
                ej * q + ei,
                ej * q + ei + 1,
                (ej + 1) * q + ei + 1,
                (ej + 1) * q + ei,
            ];
            for (r, &er) in tile.iter().enumerate() {
                for (s, &es) in tile.iter().enumerate() {
                    let v = MACRO_JUMP[r][s];
                    if v != 0.0 && scale != 0.0 {
                        c.push(er, es, scale * v)?;
                    }
                }
            }
        }
    }

    let (b, c) = (b.to_csr(), c.to_csr());
    let (b, c, g) = if cfg.pin_pressure {
        let keep = m_full - 1;
        let mut bp = TripletMatrix::with_capacity(keep, n, b.nnz());
        for (i, j, v) in b.triplets().filter(|&(i, _, _)| i < keep) {
            bp.push(i, j, v)?;
        }
        let mut cp = TripletMatrix::with_capacity(keep, keep, c.nnz());
        for (i, j, v) in c.triplets().filter(|&(i, j, _)| i < keep && j < keep) {
            cp.push(i, j, v)?;
        }
        (bp.to_csr(), cp.to_csr(), g[..keep].to_vec())
    } else {
        (b, c, g)
    };

    SaddleSystem::new(a.to_csr(), b, c, f, g)
}

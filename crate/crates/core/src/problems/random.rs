//! Random saddle-point systems with guaranteed structure, for property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SolverError};
use crate::saddle::SaddleSystem;
use crate::sparse::{CsrMatrix, TripletMatrix};

/// Deterministic random system for a given seed:
///
/// * `A = WWᵀ + nI` with sparse `W` (SPD),
/// * `B = [D | E]` with `D` a positive diagonal (full row rank),
/// * `C = VVᵀ` with `V` of rank `⌊m/2⌋` (semidefinite, `⌈m/2⌉` zero eigenvalues).
pub fn generate_random_saddle(n: usize, m: usize, density: f64, seed: u64) -> Result<SaddleSystem> {
    if m > n {
        return Err(SolverError::InvalidParameter(format!(
            "random saddle needs m <= n, got m={m}, n={n}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(SolverError::InvalidParameter(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut w = TripletMatrix::new(n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(density) {
                w.push(i, j, rng.random_range(-1.0..1.0))?;
            }
        }
    }
    let w = w.to_csr();
    let a = w.matmul(&w.transpose())?.shifted(n as f64)?;

    let mut b = TripletMatrix::new(m, n);
    for i in 0..m {
        b.push(i, i, rng.random_range(1.0..2.0))?;
        for j in m..n {
            if rng.random_bool(density) {
                b.push(i, j, rng.random_range(-1.0..1.0))?;
            }
        }
    }

    let rank = m / 2;
    let mut v = TripletMatrix::new(m, rank);
    for i in 0..m {
        for j in 0..rank {
            v.push(i, j, rng.random_range(-1.0..1.0))?;
        }
    }
    let v: CsrMatrix = v.to_csr();
    let c = v.matmul(&v.transpose())?;

    let f = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let g = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
    SaddleSystem::new(a, b.to_csr(), c, f, g)
}

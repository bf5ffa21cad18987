#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sadprec::{CsrMatrix, DenseMatrix, SaddleSystem};

pub fn to_na(d: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(d.nrows(), d.ncols(), d.as_slice())
}

pub fn csr_to_na(m: &CsrMatrix) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m.nrows(), m.ncols());
    for (i, j, v) in m.triplets() {
        out[(i, j)] += v;
    }
    out
}

/// Full saddle matrix `[[A, Bᵀ], [−B, C]]` built entry by entry from the blocks.
pub fn saddle_na(sys: &SaddleSystem) -> DMatrix<f64> {
    let (n, m) = (sys.n(), sys.m());
    let a = csr_to_na(sys.a());
    let b = csr_to_na(sys.b());
    let c = csr_to_na(sys.c());
    let mut out = DMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(&a);
    out.view_mut((0, n), (n, m)).copy_from(&b.transpose());
    out.view_mut((n, 0), (m, n)).copy_from(&(-&b));
    out.view_mut((n, n), (m, m)).copy_from(&c);
    out
}

pub fn random_vec(len: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random SPD matrix `XXᵀ + shift·I` with roughly `density` fill in `X`.
pub fn random_spd(n: usize, density: f64, shift: f64, seed: u64) -> CsrMatrix {
    let mut r = rng(seed);
    let mut trips = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if r.random_bool(density) {
                trips.push((i, j, r.random_range(-1.0..1.0)));
            }
        }
    }
    let x = CsrMatrix::from_triplets(n, n, &trips).unwrap();
    x.matmul(&x.transpose()).unwrap().shifted(shift).unwrap()
}

pub fn rel_err(x: &[f64], reference: &DVector<f64>) -> f64 {
    let diff: f64 = x.iter().zip(reference.iter()).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    diff / reference.norm()
}

pub fn sorted_real(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

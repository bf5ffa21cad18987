mod common;

use common::{csr_to_na, rng, sorted_real, to_na};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use sadprec::problems::{generate_random_saddle, generate_stokes_q1p0, StokesConfig};
use sadprec::spectral::{
    dense_eigen_real_schur, jacobi_eigen_decomposition, jacobi_symmetric_eigen, power_spectral_radius,
    preconditioned_matrix_dense, predicted_rmgss_spectrum, relaxed_g_dense, relaxed_g_eigenvalues,
    rmgss_cluster_radius, verify_iteration_spectrum,
};
use sadprec::stationary::IterationMatrixOperator;
use sadprec::{gmres_restarted, build_preconditioner, DenseMatrix, PrecondSpec, StoppingRule};

fn sorted_complex(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    v
}

#[test]
fn real_schur_matches_nalgebra_on_random_matrices() {
    for seed in 0..20 {
        let n = 2 + seed as usize % 25;
        let mut r = rng(seed);
        let d = DenseMatrix::from_fn(n, n, |_, _| r.random_range(-1.0..1.0));
        let ours = dense_eigen_real_schur(&d).unwrap();
        let theirs: Vec<Complex64> = to_na(&d).complex_eigenvalues().iter().cloned().collect();
        let theirs = sorted_complex(theirs);
        // Greedy matching is robust to ordering ties between conjugate pairs.
        let mut used = vec![false; n];
        for lam in ours.eigenvalues() {
            let (k, dist) = theirs
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, mu)| (k, (lam - mu).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            used[k] = true;
            assert!(dist < 1e-8, "seed {seed}: {lam} off by {dist}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_matches_nalgebra(n in 1usize..20, seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = DenseMatrix::from_fn(n, n, |_, _| r.random_range(-1.0..1.0));
        let sym = DenseMatrix::from_fn(n, n, |i, j| x[(i, j)] + x[(j, i)]);
        let ours = jacobi_symmetric_eigen(&sym).unwrap().real_parts();
        let theirs = sorted_real(to_na(&sym).symmetric_eigenvalues().iter().cloned().collect());
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
        let dec = jacobi_eigen_decomposition(&sym).unwrap();
        let q = to_na(&dec.vectors);
        prop_assert!((q.transpose() * &q - DMatrix::identity(n, n)).amax() < 1e-10);
    }

    #[test]
    fn rmgss_spectrum_matches_prediction(n in 3usize..25, m_frac in 0.1f64..1.0, seed in any::<u64>(), beta in prop::sample::select(vec![1e-3, 0.1, 1.0])) {
        let m = ((n as f64 * m_frac) as usize).max(1);
        let sys = generate_random_saddle(n, m, 0.3, seed).unwrap();
        let computed = dense_eigen_real_schur(&preconditioned_matrix_dense(&sys, PrecondSpec::rmgss(beta).direct()).unwrap()).unwrap();
        let predicted = predicted_rmgss_spectrum(&sys, beta).unwrap();
        prop_assert!(computed.max_sorted_distance(&predicted).unwrap() < 1e-8);
    }

    #[test]
    fn iteration_matrix_is_contractive(n in 2usize..16, seed in any::<u64>(), alpha in prop::sample::select(vec![1e-3, 0.1, 1.0, 10.0]), beta in prop::sample::select(vec![1e-3, 0.1, 1.0, 10.0])) {
        let sys = generate_random_saddle(n, n / 2 + 1, 0.3, seed).unwrap();
        let check = verify_iteration_spectrum(&sys, alpha, beta).unwrap();
        prop_assert!(check.rho < 1.0);
        prop_assert!(check.min_dist_to_plus_one > 1e-10);
        prop_assert!(check.min_dist_to_minus_one > 1e-10);
    }

    #[test]
    fn rmgss_gmres_terminates_within_m_plus_one(n in 2usize..40, m_frac in 0.05f64..1.0, seed in any::<u64>()) {
        let m = ((n as f64 * m_frac) as usize).max(1);
        let sys = generate_random_saddle(n, m, 0.3, seed).unwrap();
        let p = build_preconditioner(&sys, PrecondSpec::rmgss(0.5).direct()).unwrap();
        let rule = StoppingRule { rel_tol: 1e-9, max_outer: sys.order(), restart: sys.order() };
        let report = gmres_restarted(&sys, &sys.rhs(), Some(p.as_ref()), rule).unwrap();
        prop_assert!(report.converged);
        prop_assert!(report.outer_iterations <= m + 1, "{} > {}", report.outer_iterations, m + 1);
    }
}

#[test]
fn g_matches_explicit_formula() {
    let sys = generate_random_saddle(15, 6, 0.3, 2).unwrap();
    let a = csr_to_na(sys.a());
    let b = csr_to_na(sys.b());
    let g = csr_to_na(sys.c()) + &b * a.try_inverse().unwrap() * b.transpose();
    let ours = to_na(&relaxed_g_dense(&sys).unwrap());
    assert!((ours - &g).amax() < 1e-12 * g.amax());
    let mu = relaxed_g_eigenvalues(&sys).unwrap();
    let oracle = sorted_real(g.symmetric_eigenvalues().iter().cloned().collect());
    for (a, b) in mu.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10 * b.abs().max(1.0));
    }
}

#[test]
fn stokes_cluster_radius_shrinks_with_beta() {
    let sys = generate_stokes_q1p0(&StokesConfig::new(4)).unwrap();
    let mut last = f64::INFINITY;
    for beta in [1.0, 0.1, 0.01, 0.001] {
        let computed = dense_eigen_real_schur(&preconditioned_matrix_dense(&sys, PrecondSpec::rmgss(beta).direct()).unwrap()).unwrap();
        let radius = rmgss_cluster_radius(&sys, beta).unwrap();
        let spread = computed.max_distance_to(Complex64::new(1.0, 0.0));
        assert!((spread - radius).abs() < 1e-8, "beta {beta}: {spread} vs {radius}");
        assert!(radius < last);
        last = radius;
    }
}

#[test]
fn power_estimate_bounds_gamma_radius_from_below() {
    let sys = generate_random_saddle(10, 4, 0.3, 3).unwrap();
    let dense = verify_iteration_spectrum(&sys, 0.1, 0.1).unwrap();
    let op = IterationMatrixOperator::new(&sys, 0.1, 0.1).unwrap();
    let est = power_spectral_radius(&op, 2000, 5);
    assert!(est <= dense.rho * (1.0 + 1e-6));
    assert!(est >= 0.5 * dense.rho);
}

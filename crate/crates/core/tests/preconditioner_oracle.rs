mod common;

use common::{csr_to_na, saddle_na, to_na};
use nalgebra::{DMatrix, DVector};
use sadprec::precond::{assemble_preconditioner, form_schur_dense, MgssApplicator};
use sadprec::problems::generate_random_saddle;
use sadprec::stationary::splitting_matrices;
use sadprec::{build_preconditioner, CsrMatrix, Preconditioner, PrecondSpec, SaddleSystem};

fn all_direct_specs() -> Vec<PrecondSpec> {
    vec![
        PrecondSpec::mgss(0.3, 0.7).direct(),
        PrecondSpec::mgss(1e-3, 1e-3).direct(),
        PrecondSpec::rmgss(0.2).direct(),
        PrecondSpec::hss(0.8).direct(),
        PrecondSpec::none(),
    ]
}

#[test]
fn assembled_preconditioner_inverts_apply() {
    for seed in 0..6 {
        let sys = generate_random_saddle(24, 9, 0.25, seed).unwrap();
        let mut rng = common::rng(seed);
        for spec in all_direct_specs() {
            let p = csr_to_na(&assemble_preconditioner(&sys, spec).unwrap());
            let app = build_preconditioner(&sys, spec).unwrap();
            for _ in 0..5 {
                let r = common::random_vec(sys.order(), &mut rng);
                let z = app.apply(&r).unwrap();
                let back = &p * DVector::from_column_slice(&z);
                let rn = DVector::from_column_slice(&r);
                assert!((back - &rn).norm() <= 1e-10 * rn.norm(), "{spec:?} seed {seed}");
            }
        }
    }
}

/// The explicit block formulas, built independently of the crate's assembly.
fn mgss_blocks(sys: &SaddleSystem, alpha: f64, beta: f64) -> DMatrix<f64> {
    let (n, m) = (sys.n(), sys.m());
    let a = csr_to_na(sys.a());
    let b = csr_to_na(sys.b());
    let c = csr_to_na(sys.c());
    let mut p = DMatrix::zeros(n + m, n + m);
    p.view_mut((0, 0), (n, n)).copy_from(&(a + DMatrix::identity(n, n) * alpha));
    p.view_mut((0, n), (n, m)).copy_from(&b.transpose());
    p.view_mut((n, 0), (m, n)).copy_from(&(-&b));
    p.view_mut((n, n), (m, m)).copy_from(&(c + DMatrix::identity(m, m) * beta));
    p * 0.5
}

#[test]
fn three_factor_inverse_matches_dense_inverse() {
    for seed in 0..5 {
        let sys = generate_random_saddle(40, 15, 0.2, seed).unwrap();
        let (n, m) = (sys.n(), sys.m());
        let (alpha, beta) = (0.05, 0.3);
        let b = csr_to_na(sys.b());
        let shifted_c = csr_to_na(sys.c()) + DMatrix::identity(m, m) * beta;
        let shifted_c_inv = shifted_c.clone().try_inverse().unwrap();
        let schur = csr_to_na(sys.a()) + DMatrix::identity(n, n) * alpha + b.transpose() * &shifted_c_inv * &b;

        let schur_crate = to_na(&form_schur_dense(&sys, alpha, beta).unwrap());
        assert!((&schur_crate - &schur).amax() <= 1e-12 * schur.amax());

        let mut left = DMatrix::identity(n + m, n + m);
        left.view_mut((n, 0), (m, n)).copy_from(&(&shifted_c_inv * &b));
        let mut middle = DMatrix::zeros(n + m, n + m);
        middle.view_mut((0, 0), (n, n)).copy_from(&schur.try_inverse().unwrap());
        middle.view_mut((n, n), (m, m)).copy_from(&shifted_c_inv);
        let mut right = DMatrix::identity(n + m, n + m);
        right.view_mut((0, n), (n, m)).copy_from(&(-(b.transpose() * &shifted_c_inv)));
        let product = left * middle * right * 2.0;

        let inverse = mgss_blocks(&sys, alpha, beta).try_inverse().unwrap();
        assert!((&product - &inverse).norm() <= 1e-10 * inverse.norm(), "seed {seed}");

        let app = MgssApplicator::new(&sys, PrecondSpec::mgss(alpha, beta).direct()).unwrap();
        let mut rng = common::rng(seed);
        let r = common::random_vec(n + m, &mut rng);
        let z = DVector::from_vec(app.apply(&r).unwrap());
        let expected = &inverse * DVector::from_vec(r);
        assert!((z - &expected).norm() <= 1e-10 * expected.norm());
    }
}

#[test]
fn shift_splitting_reduction_without_stabilization() {
    for seed in 0..4 {
        let sys = generate_random_saddle(4, 2, 0.5, seed).unwrap();
        let sys = SaddleSystem::new(
            sys.a().clone(),
            sys.b().clone(),
            CsrMatrix::zeros(2, 2),
            sys.f().to_vec(),
            sys.g().to_vec(),
        )
        .unwrap();
        let alpha = 0.4;
        let half_shift = (DMatrix::identity(6, 6) * alpha + saddle_na(&sys)) * 0.5;
        let inverse = half_shift.try_inverse().unwrap();
        let app = build_preconditioner(&sys, PrecondSpec::mgss(alpha, alpha).direct()).unwrap();
        let mut rng = common::rng(seed);
        for _ in 0..10 {
            let r = common::random_vec(6, &mut rng);
            let z = DVector::from_vec(app.apply(&r).unwrap());
            let expected = &inverse * DVector::from_vec(r);
            assert!((z - &expected).norm() <= 1e-10 * expected.norm(), "seed {seed}");
        }
    }
}

#[test]
fn splitting_matrices_recompose() {
    let sys = generate_random_saddle(10, 4, 0.3, 11).unwrap();
    let (m, n) = splitting_matrices(&sys, 0.2, 0.6).unwrap();
    let diff = csr_to_na(&m) - csr_to_na(&n);
    assert!((diff - saddle_na(&sys)).amax() <= 1e-14);
    assert!((csr_to_na(&m) - mgss_blocks(&sys, 0.2, 0.6)).amax() <= 1e-14);
}

#[test]
fn hss_matches_product_form() {
    let sys = generate_random_saddle(12, 5, 0.3, 3).unwrap();
    let (n, m) = (sys.n(), sys.m());
    let alpha = 0.7;
    let mut h = DMatrix::zeros(n + m, n + m);
    h.view_mut((0, 0), (n, n)).copy_from(&csr_to_na(sys.a()));
    h.view_mut((n, n), (m, m)).copy_from(&csr_to_na(sys.c()));
    let s = saddle_na(&sys) - &h;
    let id = DMatrix::identity(n + m, n + m);
    let p = (&id * alpha + h) * (&id * alpha + s) / (2.0 * alpha);
    let assembled = csr_to_na(&assemble_preconditioner(&sys, PrecondSpec::hss(alpha)).unwrap());
    assert!((assembled - &p).amax() <= 1e-12 * p.amax());
}

#[test]
fn inexact_inner_solves_stay_close_to_exact() {
    let sys = generate_random_saddle(30, 10, 0.2, 9).unwrap();
    let exact = build_preconditioner(&sys, PrecondSpec::mgss(0.1, 0.1).direct()).unwrap();
    let inexact = build_preconditioner(&sys, PrecondSpec::mgss(0.1, 0.1)).unwrap();
    let mut rng = common::rng(1);
    let r = common::random_vec(sys.order(), &mut rng);
    let ze = DVector::from_vec(exact.apply(&r).unwrap());
    let zi = DVector::from_vec(inexact.apply(&r).unwrap());
    assert!((&ze - zi).norm() <= 0.1 * ze.norm());
    assert!(inexact.inner_iterations() > 0);
    assert_eq!(exact.inner_iterations(), 0);
}

use proptest::prelude::*;
use sadprec::problems::{
    generate_random_saddle, generate_stokes_q1p0, read_bundle, read_matrix_market, read_vector, write_bundle,
    write_matrix_market, write_matrix_market_symmetric, write_vector, StokesConfig,
};
use sadprec::CsrMatrix;

fn finite_nonzero() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL
}

proptest! {
    #[test]
    fn values_round_trip_bit_exact(entries in prop::collection::vec((0usize..6, 0usize..5, finite_nonzero()), 0..30)) {
        let m = CsrMatrix::from_triplets(6, 5, &entries).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.mtx");
        write_matrix_market(&m, &path).unwrap();
        let back = read_matrix_market(&path).unwrap();
        prop_assert_eq!(back.row_ptr(), m.row_ptr());
        prop_assert_eq!(back.col_idx(), m.col_idx());
        for (a, b) in back.values().iter().zip(m.values()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn vectors_round_trip_bit_exact(v in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 0..40)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.vec");
        write_vector(&v, &path).unwrap();
        let back = read_vector(&path).unwrap();
        prop_assert_eq!(back.len(), v.len());
        for (a, b) in back.iter().zip(&v) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}

#[test]
fn symmetric_storage_round_trip() {
    let sys = generate_stokes_q1p0(&StokesConfig::new(4)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.mtx");
    write_matrix_market_symmetric(sys.a(), &path).unwrap();
    assert_eq!(&read_matrix_market(&path).unwrap(), sys.a());
    assert!(write_matrix_market_symmetric(sys.b(), dir.path().join("b.mtx")).is_err());
}

#[test]
fn bundle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sys = generate_random_saddle(12, 5, 0.3, 42).unwrap();
    let config = serde_json::json!({"n": 12, "m": 5, "seed": 42});
    write_bundle(&sys, dir.path(), "random", config.clone()).unwrap();
    let (back, meta) = read_bundle(dir.path()).unwrap();
    assert_eq!(back, sys);
    assert_eq!((meta.n, meta.m), (12, 5));
    assert_eq!(meta.generator, "random");
    assert_eq!(meta.config, config);
}

#[test]
fn bundle_shape_mismatch_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let sys = generate_random_saddle(6, 3, 0.3, 1).unwrap();
    write_bundle(&sys, dir.path(), "random", serde_json::Value::Null).unwrap();
    let meta = std::fs::read_to_string(dir.path().join("meta.json")).unwrap().replace("\"m\": 3", "\"m\": 2");
    std::fs::write(dir.path().join("meta.json"), meta).unwrap();
    assert!(read_bundle(dir.path()).is_err());
    assert!(read_bundle(dir.path().join("missing")).is_err());
}

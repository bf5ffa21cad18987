mod common;

use approx::assert_relative_eq;
use common::{csr_to_na, saddle_na};
use nalgebra::DVector;
use proptest::prelude::*;
use sadprec::problems::generate_random_saddle;
use sadprec::{assemble_block_saddle, CsrMatrix, LinearOperator, TripletMatrix};

fn triplets_strategy(max_dim: usize) -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, f64)>)> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        let entry = (0..r, 0..c, -10.0f64..10.0);
        (Just(r), Just(c), prop::collection::vec(entry, 0..3 * r * c))
    })
}

proptest! {
    #[test]
    fn csr_structure_invariants((r, c, trips) in triplets_strategy(8)) {
        let m = CsrMatrix::from_triplets(r, c, &trips).unwrap();
        let ptr = m.row_ptr();
        prop_assert_eq!(ptr[0], 0);
        prop_assert_eq!(ptr[r], m.nnz());
        for i in 0..r {
            let (cols, vals) = m.row(i);
            prop_assert!(cols.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(cols.iter().all(|&j| j < c));
            prop_assert!(vals.iter().all(|&v| v != 0.0));
        }
        // duplicates are summed
        let mut dense = vec![0.0; r * c];
        for &(i, j, v) in &trips {
            dense[i * c + j] += v;
        }
        for i in 0..r {
            for j in 0..c {
                prop_assert!((m.get(i, j) - dense[i * c + j]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn spmv_matches_dense_oracle((r, c, trips) in triplets_strategy(8), seed in any::<u64>()) {
        let m = CsrMatrix::from_triplets(r, c, &trips).unwrap();
        let mut rng = common::rng(seed);
        let x = common::random_vec(c, &mut rng);
        let y = m.apply(&x);
        let oracle = csr_to_na(&m) * DVector::from_vec(x);
        for (a, b) in y.iter().zip(oracle.iter()) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn transpose_is_adjoint((r, c, trips) in triplets_strategy(8), seed in any::<u64>()) {
        let m = CsrMatrix::from_triplets(r, c, &trips).unwrap();
        let mut rng = common::rng(seed);
        let x = common::random_vec(c, &mut rng);
        let y = common::random_vec(r, &mut rng);
        let lhs = sadprec::vector::dot(&y, &m.apply(&x));
        let rhs = sadprec::vector::dot(&m.spmv_transpose(&y).unwrap(), &x);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        prop_assert_eq!(m.transpose().spmv(&y).unwrap(), m.spmv_transpose(&y).unwrap());
    }

    #[test]
    fn triplet_round_trip((r, c, trips) in triplets_strategy(8)) {
        let m = CsrMatrix::from_triplets(r, c, &trips).unwrap();
        let back: Vec<_> = m.triplets().collect();
        let again = CsrMatrix::from_triplets(r, c, &back).unwrap();
        prop_assert_eq!(&again, &m);
        prop_assert_eq!(m.to_triplet_matrix().to_csr(), m);
    }

    #[test]
    fn matmul_matches_dense((r, c, trips) in triplets_strategy(6), (c2, t2) in (1usize..6).prop_flat_map(|k| (Just(k), prop::collection::vec((0..6usize, 0..k, -3.0f64..3.0), 0..20)))) {
        let a = CsrMatrix::from_triplets(r, c, &trips).unwrap();
        let t2: Vec<_> = t2.into_iter().filter(|&(i, _, _)| i < c).collect();
        let b = CsrMatrix::from_triplets(c, c2, &t2).unwrap();
        let prod = csr_to_na(&a.matmul(&b).unwrap());
        let oracle = csr_to_na(&a) * csr_to_na(&b);
        prop_assert!((prod - oracle).amax() <= 1e-12);
    }

    #[test]
    fn linear_combination_matches_dense((r, c, trips) in triplets_strategy(6), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let m1 = CsrMatrix::from_triplets(r, c, &trips).unwrap();
        let m2 = CsrMatrix::from_triplets(r, c, &trips.iter().rev().map(|&(i, j, v)| (i, j, v * 0.5 + 1.0)).collect::<Vec<_>>()).unwrap();
        let combo = csr_to_na(&m1.linear_combination(a, &m2, b).unwrap());
        let oracle = csr_to_na(&m1) * a + csr_to_na(&m2) * b;
        prop_assert!((combo - oracle).amax() <= 1e-12);
    }
}

#[test]
fn block_assembly_matches_dense_oracle() {
    for seed in 0..10 {
        let sys = generate_random_saddle(9, 4, 0.3, seed).unwrap();
        let block = csr_to_na(&assemble_block_saddle(&sys));
        assert_eq!(block, saddle_na(&sys));
        let mut rng = common::rng(seed + 100);
        let u = common::random_vec(sys.order(), &mut rng);
        let oracle = saddle_na(&sys) * DVector::from_column_slice(&u);
        let applied = sys.apply(&u).unwrap();
        for (a, b) in applied.iter().zip(oracle.iter()) {
            assert_relative_eq!(*a, *b, epsilon = 1e-12);
        }
    }
}

#[test]
fn symmetric_permutation_is_similarity() {
    let a = common::random_spd(7, 0.3, 1.0, 3);
    let perm = vec![6, 2, 0, 5, 1, 3, 4];
    let p = a.permute_symmetric(&perm).unwrap();
    for i in 0..7 {
        for j in 0..7 {
            assert_eq!(p.get(i, j), a.get(perm[i], perm[j]));
        }
    }
}

#[test]
fn triplet_matrix_rejects_out_of_range() {
    let mut t = TripletMatrix::new(2, 3);
    assert!(t.push(2, 0, 1.0).is_err());
    assert!(t.push(0, 3, 1.0).is_err());
    assert!(t.push(1, 2, 1.0).is_ok());
}

use nalgebra::DMatrix;
use num_rational::BigRational;
use proptest::prelude::*;
use qjoin_core::corep::fundamental_u;
use qjoin_core::hopfalg::su_q2;
use qjoin_core::index::{certified_index, fredholm_compression, BasisState, Precision, TorusHalf};

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// The compression of `U*` to `k < 0` kills `e_{0,−1} ⊗ ε₀` from the left:
/// that row of the dense matrix is exactly zero, so it spans the cokernel.
#[test]
fn cokernel_vector_is_explicit() {
    let ustar = fundamental_u(&su_q2()).unwrap().adjoint();
    let t = fredholm_compression::<f64>(&ustar, &q(1, 2), 8, 6, TorusHalf::Negative, ()).unwrap();
    let dense = t.to_dense();
    let row = t.index_of(&BasisState { n: 0, k: -1, comp: 0 }).unwrap();
    assert!(dense[row].iter().all(|&v| v == 0.0));
    // no column is identically zero: nothing is killed from the right
    let m = DMatrix::from_fn(dense.len(), dense.len(), |i, j| dense[i][j]);
    for (j, exact) in t.exact_cols().iter().enumerate() {
        if *exact {
            assert!(m.column(j).norm() > 0.5);
        }
    }
}

/// Exact columns of a compressed unitary are orthonormal away from the
/// projection boundary, so their singular values are 1 there.
#[test]
fn dense_svd_agrees_on_interior_block() {
    let u = fundamental_u(&su_q2()).unwrap();
    let t = fredholm_compression::<f64>(&u, &q(1, 2), 10, 6, TorusHalf::Negative, ()).unwrap();
    let dense = t.to_dense();
    let keep: Vec<usize> =
        t.states().iter().enumerate().filter(|(j, s)| t.exact_cols()[*j] && s.k <= -3).map(|(j, _)| j).collect();
    let m = DMatrix::from_fn(dense.len(), keep.len(), |i, c| dense[i][keep[c]]);
    let sv = m.singular_values();
    for s in sv.iter() {
        assert!((s - 1.0).abs() < 1e-12, "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn index_is_locally_constant(num in 5i64..95, size in 6u32..16) {
        let u = fundamental_u(&su_q2()).unwrap();
        let q0 = q(num, 100);
        let neg = certified_index(&u.adjoint(), &q0, size, size as i64, TorusHalf::Negative, 1e-8, Precision::F64).unwrap();
        let pos = certified_index(&u.adjoint(), &q0, size, size as i64, TorusHalf::NonNegative, 1e-8, Precision::F64).unwrap();
        prop_assert_eq!(neg.index, -1);
        prop_assert_eq!(pos.index, 1);
        prop_assert!(neg.certified() && pos.certified());
    }
}

mod common;

use common::{from_na, to_na};
use jdgsvd_core::dense::{dense_gsvd, householder_qr, jacobi_svd, DenseGsvd};
use jdgsvd_core::{DenseMatrix, ThinQr};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_dense(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DenseMatrix {
    let data = (0..rows * cols).map(|_| rng.random_range(-1.0..1.0)).collect();
    DenseMatrix::from_col_major(rows, cols, data)
}

/// Reconstruction, `α² + β² = 1`, and `Dᵀ(GᵀG + HᵀH)D = I`.
pub fn assert_gsvd_invariants(g: &DenseMatrix, h: &DenseMatrix, out: &DenseGsvd) {
    let scale = to_na(g).norm() + to_na(h).norm();
    let gd = g.matmul(&out.d);
    let hd = h.matmul(&out.d);
    assert!(gd.sub(&out.e.scale_cols(&out.sigma_g)).norm_max() <= 1e-12 * scale);
    assert!(hd.sub(&out.f.scale_cols(&out.sigma_h)).norm_max() <= 1e-12 * scale);
    for (a, b) in out.sigma_g.iter().zip(&out.sigma_h) {
        assert!((a * a + b * b - 1.0).abs() <= 1e-13);
    }
    let (g, h, d) = (to_na(g), to_na(h), to_na(&out.d));
    let m = d.transpose() * (g.transpose() * &g + h.transpose() * &h) * &d;
    assert!((m - DMatrix::identity(out.len(), out.len())).amax() <= 1e-11);
}

#[test]
fn appended_qr_matches_householder() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = random_dense(30, 10, &mut rng);
    let mut qr = ThinQr::empty(30);
    for c in m.columns() {
        qr.push_column(c).unwrap();
    }
    assert!(qr.q.matmul(&qr.r).sub(&m).norm_max() <= 1e-12);
    assert!(qr.q.orthonormality_error() <= 1e-13);
    let hh = householder_qr(&m);
    for j in 0..10 {
        for i in 0..=j {
            assert!((qr.r[(i, j)].abs() - hh.r[(i, j)].abs()).abs() <= 1e-12);
        }
    }
}

#[test]
fn jacobi_svd_matches_eigenvalues_of_gram() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_dense(8, 5, &mut rng);
    let svd = jacobi_svd(&m);
    let gram = to_na(&m).transpose() * to_na(&m);
    let mut eig: Vec<f64> = gram.symmetric_eigen().eigenvalues.iter().map(|v| v.max(0.0).sqrt()).collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for (s, e) in svd.s.iter().zip(&eig) {
        assert!((s - e).abs() <= 1e-12);
    }
    let rebuilt = svd.u.scale_cols(&svd.s).matmul(&svd.v.transpose());
    assert!(rebuilt.sub(&m).norm_max() <= 1e-13);
    assert!(svd.u.orthonormality_error() <= 1e-13);
    assert!(svd.v.orthonormality_error() <= 1e-13);
}

#[test]
fn gsvd_values_match_generalized_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let g = random_dense(12, 12, &mut rng);
    let h = random_dense(12, 12, &mut rng);
    let out = dense_gsvd(&g, &h).unwrap();
    assert_gsvd_invariants(&g, &h, &out);
    // θ² are the eigenvalues of H⁻ᵀGᵀGH⁻¹
    let (gn, hn) = (to_na(&g), to_na(&h));
    let hinv = hn.clone().try_inverse().unwrap();
    let sym = hinv.transpose() * gn.transpose() * &gn * &hinv;
    let sym = (&sym + sym.transpose()) * 0.5;
    let mut eig: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().map(|v| v.sqrt()).collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for (t, e) in out.thetas().iter().zip(&eig) {
        assert!((t - e).abs() <= 1e-10 * e.max(1.0), "{t} vs {e}");
    }
}

#[test]
fn rank_deficient_stack_is_an_error() {
    let g = from_na(&DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]));
    let h = from_na(&DMatrix::from_row_slice(2, 2, &[2.0, 2.0, 0.0, 0.0]));
    assert!(dense_gsvd(&g, &h).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gsvd_invariants_hold(k in 1usize..=40, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_dense(k, k, &mut rng);
        let h = random_dense(k, k, &mut rng);
        let out = dense_gsvd(&g, &h).unwrap();
        assert_gsvd_invariants(&g, &h, &out);
        let th = out.thetas();
        prop_assert!(th.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn qr_appends_stay_orthonormal(rows in 10usize..60, cols in 1usize..10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_dense(rows, cols, &mut rng);
        let mut qr = ThinQr::empty(rows);
        for c in m.columns() {
            qr.push_column(c).unwrap();
        }
        prop_assert!(qr.q.matmul(&qr.r).sub(&m).norm_max() <= 1e-12);
        prop_assert!(qr.q.orthonormality_error() <= 1e-13);
        for i in 0..cols {
            prop_assert!(qr.r[(i, i)] >= 0.0);
        }
    }
}

mod common;

use common::{laplacian_from_edges, max_abs, random_small_domain, rng, schrodinger_oracle};
use graphpde::{assemble, eigendecompose, Complex64};
use nalgebra::DMatrix;
use rand::Rng;

#[test]
fn assemble_matches_edge_oracle() {
    let mut r = rng(21);
    for _ in 0..50 {
        let d = random_small_domain(&mut r, 50);
        let l = assemble(&d);
        assert_eq!(l.matrix(), &laplacian_from_edges(&d));
        assert_eq!(l.matrix(), &l.matrix().transpose());
    }
}

#[test]
fn spectrum_invariants_on_random_corpus() {
    let mut r = rng(22);
    for _ in 0..100 {
        let d = random_small_domain(&mut r, 50);
        let l = assemble(&d);
        let s = eigendecompose(&l).unwrap();
        let tol = 1e-10 * s.lambda_max().max(1.0);
        assert!(s.max_eigen_residual(&l) <= tol);
        assert!(s.orthonormality_error() <= 1e-10);
        assert!(s.eigenvalues()[0] > 0.0);
        assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));

        let phi = s.eigenvectors();
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(s.eigenvalues()));
        let recon = phi * lambda * phi.transpose();
        assert!((recon - l.matrix()).amax() <= tol);
        let n = s.len();
        assert!((phi * phi.transpose() - DMatrix::identity(n, n)).amax() <= 1e-10);
    }
}

#[test]
fn eigenvalues_agree_with_nalgebra() {
    let mut r = rng(23);
    for _ in 0..20 {
        let d = random_small_domain(&mut r, 50);
        let l = assemble(&d);
        let s = eigendecompose(&l).unwrap();
        let mut reference: Vec<f64> = l
            .matrix()
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        reference.sort_by(f64::total_cmp);
        for (a, b) in s.eigenvalues().iter().zip(&reference) {
            assert!((a - b).abs() <= 1e-10 * s.lambda_max().max(1.0));
        }
    }
}

#[test]
fn kernel_is_unitary_group() {
    let mut r = rng(24);
    for _ in 0..30 {
        let d = random_small_domain(&mut r, 40);
        let s = eigendecompose(&assemble(&d)).unwrap();
        let n = s.len();
        let t = r.random_range(-10.0..10.0);
        let u = r.random_range(-10.0..10.0);
        let kt = s.schrodinger_kernel(t);
        let ku = s.schrodinger_kernel(u);
        let unitarity = &kt * kt.adjoint() - DMatrix::<Complex64>::identity(n, n);
        assert!(max_abs(&unitarity) <= 1e-10);
        let group = s.schrodinger_kernel(t + u) - &kt * &ku;
        assert!(max_abs(&group) <= 1e-10);
    }
}

#[test]
fn kernel_matches_matrix_exponential() {
    let mut r = rng(25);
    for _ in 0..30 {
        let d = random_small_domain(&mut r, 20);
        let l = assemble(&d);
        let s = eigendecompose(&l).unwrap();
        for t in [0.1, 1.0, 5.0] {
            let diff = s.schrodinger_kernel(t) - schrodinger_oracle(l.matrix(), t);
            assert!(max_abs(&diff) <= 1e-9, "t = {t}: {:e}", max_abs(&diff));
        }
    }
}

#[test]
fn kernel_p3_and_p4_closed_forms() {
    let d = graphpde::Domain::from_edges(&[("a", "b"), ("b", "c")], &["b"]).unwrap();
    let s = eigendecompose(&assemble(&d)).unwrap();
    for t in [0.3, 1.0, 7.5] {
        assert!(
            (s.schrodinger_kernel(t)[(0, 0)] - Complex64::from_polar(1.0, -2.0 * t)).norm() < 1e-14
        );
    }
    let d =
        graphpde::Domain::from_edges(&[("0", "1"), ("1", "2"), ("2", "3")], &["1", "2"]).unwrap();
    let s = eigendecompose(&assemble(&d)).unwrap();
    assert!((s.eigenvalues()[0] - 1.0).abs() <= 1e-12);
    assert!((s.eigenvalues()[1] - 3.0).abs() <= 1e-12);
}

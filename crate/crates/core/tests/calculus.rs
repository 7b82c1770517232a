mod common;

use common::{laplacian_from_edges, quadratic_form, random_small_domain, rng};
use graphpde::generate::{random_dirichlet, random_function};
use graphpde::{
    assemble, boundary_term, dirichlet_energy, eigendecompose, green_identity_residual,
    green_identity_sides, laplacian_apply, mass_norm_sq, Complex64, GraphFunction,
};
use proptest::prelude::*;

#[test]
fn green_identity_random_complex() {
    let mut r = rng(11);
    for _ in 0..100 {
        let d = random_small_domain(&mut r, 50);
        let f = random_function(&mut r, &d);
        let g = random_function(&mut r, &d);
        let (lhs, _) = green_identity_sides(&f, &g).unwrap();
        let res = green_identity_residual(&f, &g).unwrap();
        assert!(res <= 1e-12 * (1.0 + lhs.norm()), "residual {res:e}");
    }
}

#[test]
fn green_identity_conjugate_symmetry() {
    let mut r = rng(12);
    for _ in 0..50 {
        let d = random_small_domain(&mut r, 40);
        let f = random_function(&mut r, &d);
        let g = random_function(&mut r, &d);
        let (fg, _) = green_identity_sides(&f, &g).unwrap();
        let (gf, _) = green_identity_sides(&g, &f).unwrap();
        assert!((fg - gf.conj()).norm() <= 1e-12 * (1.0 + fg.norm()));
    }
}

#[test]
fn boundary_term_is_real_for_dirichlet() {
    let mut r = rng(13);
    for _ in 0..50 {
        let d = random_small_domain(&mut r, 40);
        let f = random_dirichlet(&mut r, &d);
        let t = boundary_term(&f);
        assert!(t.im.abs() <= 1e-12, "imaginary part {:e}", t.im);
        // -Σ |∇_xy f|² over interior–boundary pairs
        let mut expected = 0.0;
        for x in d.interior() {
            for &y in d.graph().neighbors(x) {
                if !d.is_interior(y) {
                    expected -= (f.at(y) - f.at(x)).norm_sqr();
                }
            }
        }
        assert!((t.re - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
    }
}

#[test]
fn dirichlet_energy_is_twice_quadratic_form() {
    let mut r = rng(14);
    for _ in 0..50 {
        let d = random_small_domain(&mut r, 20);
        let f = random_dirichlet(&mut r, &d);
        let l = laplacian_from_edges(&d);
        let e = dirichlet_energy(&f);
        let q = 2.0 * quadratic_form(&l, &f);
        assert!((e - q).abs() <= 1e-12 * (1.0 + e), "{e} vs {q}");
    }
}

#[test]
fn parseval_against_spectrum() {
    let mut r = rng(15);
    for _ in 0..30 {
        let d = random_small_domain(&mut r, 30);
        let f = random_dirichlet(&mut r, &d);
        let spec = eigendecompose(&assemble(&d)).unwrap();
        let parseval: f64 = spec
            .coefficients(&f)
            .unwrap()
            .iter()
            .map(|c| c.norm_sqr())
            .sum();
        let mass = mass_norm_sq(&f);
        assert!((parseval - mass).abs() <= 1e-12 * (1.0 + mass));
    }
}

#[test]
fn laplacian_matches_matrix_action() {
    // (L f_S)(x) = −(Δf)(x) for Dirichlet f
    let mut r = rng(16);
    for _ in 0..30 {
        let d = random_small_domain(&mut r, 30);
        let f = random_dirichlet(&mut r, &d);
        let l = laplacian_from_edges(&d);
        for x in d.interior() {
            let lf: Complex64 = (0..d.n_interior()).map(|y| f.at(y) * l[(x, y)]).sum();
            assert!((lf + laplacian_apply(&f, x).unwrap()).norm() <= 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn energy_nonnegative_and_zero_only_for_zero(seed in 0u64..10_000, scale in 1e-3f64..1e3) {
        let mut r = rng(seed);
        let d = random_small_domain(&mut r, 25);
        let f = random_dirichlet(&mut r, &d);
        let scaled: Vec<Complex64> = f.interior().iter().map(|z| z * scale).collect();
        let f = GraphFunction::from_interior(&d, &scaled).unwrap();
        prop_assert!(dirichlet_energy(&f) > 0.0);
        prop_assert_eq!(dirichlet_energy(&GraphFunction::zeros(&d)), 0.0);
    }

    #[test]
    fn constants_are_annihilated(seed in 0u64..10_000, re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let mut r = rng(seed);
        let d = random_small_domain(&mut r, 25);
        let k = GraphFunction::from_values(&d, vec![Complex64::new(re, im); d.len()]).unwrap();
        for x in d.interior() {
            prop_assert_eq!(laplacian_apply(&k, x).unwrap(), Complex64::new(0.0, 0.0));
        }
        prop_assert_eq!(dirichlet_energy(&k), 0.0);
    }

    #[test]
    fn document_round_trip(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let d = random_small_domain(&mut r, 30);
        let again = graphpde::parse_graph(&d.to_document().to_json()).unwrap();
        prop_assert_eq!(&d, &again);
        let twice = graphpde::parse_graph(&again.to_document().to_json()).unwrap();
        prop_assert_eq!(again.to_document(), twice.to_document());
    }
}

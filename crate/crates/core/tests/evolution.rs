mod common;

use common::{l2, random_small_domain, rng};
use graphpde::generate::{random_dirichlet, random_real_dirichlet};
use graphpde::{
    dirichlet_energy, laplacian_interior, mass_norm_sq, solve_schrodinger, solve_wave, Complex64,
    GraphFunction, SpectralPropagator,
};
use proptest::prelude::*;

fn grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

#[test]
fn schrodinger_conserves_mass_and_energy() {
    let mut r = rng(31);
    let times = grid(10.0, 50);
    for _ in 0..40 {
        let d = random_small_domain(&mut r, 50);
        let f = random_dirichlet(&mut r, &d);
        let traj = solve_schrodinger(&d, &f, &times).unwrap();
        let m0 = mass_norm_sq(&f);
        let e0 = dirichlet_energy(&f);
        for c in &traj.conserved {
            assert!((c.mass - m0).abs() <= 1e-10 * m0.max(1.0));
            assert!((c.dirichlet_energy - e0).abs() <= 1e-10 * e0.max(1.0));
        }
        assert!(traj.states.iter().all(|u| u.is_dirichlet()));
        assert_eq!(traj.states[0], f);
    }
}

#[test]
fn schrodinger_pde_residual() {
    let mut r = rng(32);
    for _ in 0..20 {
        let d = random_small_domain(&mut r, 50);
        let f = random_dirichlet(&mut r, &d);
        let prop = SpectralPropagator::new(&d).unwrap();
        let sol = prop.schrodinger(&f).unwrap();
        for t in grid(10.0, 25) {
            let u = sol.state(t);
            let ut = sol.time_derivative(t);
            let lap = laplacian_interior(&u);
            let res: Vec<Complex64> = ut
                .interior()
                .iter()
                .zip(&lap)
                .map(|(a, b)| Complex64::i() * a + b)
                .collect();
            assert!(l2(&res) <= 1e-10, "t = {t}: {:e}", l2(&res));
        }
    }
}

#[test]
fn schrodinger_time_reversal() {
    let mut r = rng(33);
    for _ in 0..20 {
        let d = random_small_domain(&mut r, 40);
        let f = random_dirichlet(&mut r, &d);
        let prop = SpectralPropagator::new(&d).unwrap();
        let t = 3.7;
        let back = prop
            .schrodinger(&prop.schrodinger(&f).unwrap().state(t).conj())
            .unwrap()
            .state(t);
        assert!(back.max_abs_diff(&f.conj()) <= 1e-10);
    }
}

#[test]
fn schrodinger_difference_preserves_distance() {
    let mut r = rng(34);
    for _ in 0..20 {
        let d = random_small_domain(&mut r, 40);
        let f1 = random_dirichlet(&mut r, &d);
        let bump = random_dirichlet(&mut r, &d);
        let eps = 1e-3;
        let shifted: Vec<Complex64> = f1
            .interior()
            .iter()
            .zip(bump.interior())
            .map(|(a, b)| a + b * eps)
            .collect();
        let f2 = GraphFunction::from_interior(&d, &shifted).unwrap();
        let gap0 = mass_norm_sq(&f1.sub(&f2).unwrap()).sqrt();
        let prop = SpectralPropagator::new(&d).unwrap();
        let (s1, s2) = (
            prop.schrodinger(&f1).unwrap(),
            prop.schrodinger(&f2).unwrap(),
        );
        for t in [0.5, 2.0, 9.0] {
            let gap = mass_norm_sq(&s1.state(t).sub(&s2.state(t)).unwrap()).sqrt();
            assert!((gap - gap0).abs() <= 1e-10);
        }
    }
}

#[test]
fn wave_conserves_energy_and_honors_initial_data() {
    let mut r = rng(35);
    let times = grid(10.0, 50);
    for _ in 0..40 {
        let d = random_small_domain(&mut r, 50);
        let f = random_real_dirichlet(&mut r, &d);
        let g = random_real_dirichlet(&mut r, &d);
        let traj = solve_wave(&d, &f, &g, &times).unwrap();
        let e0 = 0.5 * dirichlet_energy(&f) + mass_norm_sq(&g);
        for c in &traj.conserved {
            let e = c.wave_energy.unwrap();
            assert!((e - e0).abs() <= 1e-10 * e0.max(1.0));
        }
        let prop = SpectralPropagator::new(&d).unwrap();
        let sol = prop.wave(&f, &g).unwrap();
        // evaluate the series just off zero so the exact-copy shortcut is bypassed
        assert!(sol.state(f64::MIN_POSITIVE).max_abs_diff(&f) <= 1e-12);
        assert!(sol.velocity(f64::MIN_POSITIVE).max_abs_diff(&g) <= 1e-12);
    }
}

#[test]
fn ordered_pair_wave_energy_is_not_conserved() {
    // counting each edge twice in the gradient term breaks the energy identity
    let d =
        graphpde::Domain::from_edges(&[("0", "1"), ("1", "2"), ("2", "3")], &["1", "2"]).unwrap();
    let f = GraphFunction::delta(&d, 0).unwrap();
    let g = GraphFunction::zeros(&d);
    let prop = SpectralPropagator::new(&d).unwrap();
    let sol = prop.wave(&f, &g).unwrap();
    let doubled = |t: f64| dirichlet_energy(&sol.state(t)) + mass_norm_sq(&sol.velocity(t));
    assert!((doubled(1.0) - doubled(0.0)).abs() > 0.1);
}

#[test]
fn wave_pde_residual() {
    let mut r = rng(36);
    for _ in 0..20 {
        let d = random_small_domain(&mut r, 50);
        let f = random_real_dirichlet(&mut r, &d);
        let g = random_real_dirichlet(&mut r, &d);
        let prop = SpectralPropagator::new(&d).unwrap();
        let sol = prop.wave(&f, &g).unwrap();
        for t in grid(10.0, 25) {
            let utt = sol.acceleration(t);
            let lap = laplacian_interior(&sol.state(t));
            let res: Vec<Complex64> = utt
                .interior()
                .iter()
                .zip(&lap)
                .map(|(a, b)| a - b)
                .collect();
            assert!(l2(&res) <= 1e-10, "t = {t}: {:e}", l2(&res));
        }
    }
}

#[test]
fn wave_accepts_complex_data_by_linearity() {
    let mut r = rng(37);
    let d = random_small_domain(&mut r, 30);
    let (fr, fi) = (
        random_real_dirichlet(&mut r, &d),
        random_real_dirichlet(&mut r, &d),
    );
    let g = GraphFunction::zeros(&d);
    let combined: Vec<Complex64> = fr
        .interior()
        .iter()
        .zip(fi.interior())
        .map(|(a, b)| a + Complex64::i() * b)
        .collect();
    let f = GraphFunction::from_interior(&d, &combined).unwrap();
    let prop = SpectralPropagator::new(&d).unwrap();
    let t = 2.3;
    let u = prop.wave(&f, &g).unwrap().state(t);
    let ur = prop.wave(&fr, &g).unwrap().state(t);
    let ui = prop.wave(&fi, &g).unwrap().state(t);
    for x in d.interior() {
        assert!((u.at(x) - (ur.at(x) + Complex64::i() * ui.at(x))).norm() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mass_conserved_at_arbitrary_times(seed in 0u64..100_000, t in -50.0f64..50.0) {
        let mut r = rng(seed);
        let d = random_small_domain(&mut r, 30);
        let f = random_dirichlet(&mut r, &d);
        let prop = SpectralPropagator::new(&d).unwrap();
        let u = prop.schrodinger(&f).unwrap().state(t);
        let m0 = mass_norm_sq(&f);
        prop_assert!((mass_norm_sq(&u) - m0).abs() <= 1e-10 * m0.max(1.0));
    }
}

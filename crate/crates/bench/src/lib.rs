//! Fixtures shared by the criterion benchmarks.

use graphpde::generate::{random_dirichlet, random_domain};
use graphpde::{Domain, GraphFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn domain(n_interior: usize, seed: u64) -> Domain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_domain(&mut rng, n_interior, (n_interior / 4).max(1), 0.1)
}

pub fn initial(domain: &Domain, seed: u64) -> GraphFunction<'_> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dirichlet(&mut rng, domain)
}

/// Uniform sample times `0, t_max/n, …, t_max`.
pub fn grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| t_max * k as f64 / n as f64).collect()
}

pub fn scale(f: &GraphFunction, factor: f64) -> Vec<graphpde::Complex64> {
    f.interior().iter().map(|z| z * factor).collect()
}

//! Seeded random domains and functions for tests, benchmarks and `verify`.

use std::collections::HashSet;

use num_complex::Complex64;
use rand::Rng;

use crate::function::GraphFunction;
use crate::graph::Domain;

/// Random connected interior of `n_interior` vertices (a random recursive
/// tree plus extra edges with probability `density`) and `n_boundary ≥ 1`
/// boundary vertices, each attached to one or two interior vertices. A few
/// boundary–boundary edges are added as well.
pub fn random_domain<R: Rng>(
    rng: &mut R,
    n_interior: usize,
    n_boundary: usize,
    density: f64,
) -> Domain {
    assert!(n_interior >= 1 && n_boundary >= 1);
    let s = |i: usize| format!("s{i}");
    let b = |i: usize| format!("b{i}");
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |x: String, y: String, edges: &mut Vec<(String, String)>| {
        let key = if x < y {
            (x.clone(), y.clone())
        } else {
            (y.clone(), x.clone())
        };
        if x != y && seen.insert(key) {
            edges.push((x, y));
        }
    };

    for k in 1..n_interior {
        let parent = rng.random_range(0..k);
        push(s(parent), s(k), &mut edges);
    }
    for i in 0..n_interior {
        for j in i + 1..n_interior {
            if rng.random_bool(density) {
                push(s(i), s(j), &mut edges);
            }
        }
    }
    for k in 0..n_boundary {
        let attach = rng.random_range(1..=2);
        for _ in 0..attach {
            push(b(k), s(rng.random_range(0..n_interior)), &mut edges);
        }
        if k > 0 && rng.random_bool(0.2) {
            push(b(k), b(rng.random_range(0..k)), &mut edges);
        }
    }
    let interior: Vec<String> = (0..n_interior).map(s).collect();
    Domain::from_edges(&edges, &interior).expect("generated domain is valid")
}

fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random complex values on all of `S̄` (not Dirichlet in general).
pub fn random_function<'d, R: Rng>(rng: &mut R, domain: &'d Domain) -> GraphFunction<'d> {
    let values = (0..domain.len()).map(|_| random_complex(rng)).collect();
    GraphFunction::from_values(domain, values).expect("length matches")
}

/// Random complex interior values, zero on the boundary.
pub fn random_dirichlet<'d, R: Rng>(rng: &mut R, domain: &'d Domain) -> GraphFunction<'d> {
    let values: Vec<Complex64> = (0..domain.n_interior())
        .map(|_| random_complex(rng))
        .collect();
    GraphFunction::from_interior(domain, &values).expect("length matches")
}

/// Random real interior values, zero on the boundary.
pub fn random_real_dirichlet<'d, R: Rng>(rng: &mut R, domain: &'d Domain) -> GraphFunction<'d> {
    let values: Vec<f64> = (0..domain.n_interior())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    GraphFunction::from_real_interior(domain, &values).expect("length matches")
}

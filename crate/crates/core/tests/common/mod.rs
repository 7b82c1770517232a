//! Test-only oracles, independent of the library's spectral route.
#![allow(dead_code)]

use graphpde::generate::random_domain;
use graphpde::{Complex64, Domain, GraphFunction};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random domain with `2..=max_vertices` vertices in the closure.
pub fn random_small_domain(rng: &mut ChaCha8Rng, max_vertices: usize) -> Domain {
    let total = rng.random_range(2..=max_vertices);
    let n_boundary = rng.random_range(1..=(total / 3).max(1));
    let n_interior = (total - n_boundary).max(1);
    let density = rng.random_range(0.0..0.3);
    random_domain(rng, n_interior, n_boundary, density)
}

/// Dirichlet Laplacian built straight from the edge list: each edge with an
/// interior endpoint adds to that endpoint's diagonal, each interior–interior
/// edge contributes −1 off the diagonal.
pub fn laplacian_from_edges(d: &Domain) -> DMatrix<f64> {
    let n = d.n_interior();
    let mut l = DMatrix::zeros(n, n);
    for &(x, y) in d.graph().edges() {
        if x < n {
            l[(x, x)] += 1.0;
        }
        if y < n {
            l[(y, y)] += 1.0;
        }
        if x < n && y < n {
            l[(x, y)] -= 1.0;
            l[(y, x)] -= 1.0;
        }
    }
    l
}

/// `f* L f` over the interior.
pub fn quadratic_form(l: &DMatrix<f64>, f: &GraphFunction) -> f64 {
    let z = f.interior();
    let n = z.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += z[i].conj() * l[(i, j)] * z[j];
        }
    }
    acc.re
}

/// `exp(A)` by scaling and squaring with a degree-18 Taylor polynomial.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let norm: f64 = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let b = a * Complex64::new(scale, 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=18 {
        term = &term * &b * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(-i t L)` through [`expm`].
pub fn schrodinger_oracle(l: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let a = l.map(|x| Complex64::new(0.0, -t * x));
    expm(&a)
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Euclidean norm of a complex interior vector.
pub fn l2(u: &[Complex64]) -> f64 {
    u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

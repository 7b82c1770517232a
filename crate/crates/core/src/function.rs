//! Complex-valued functions on the closure of a domain and the discrete
//! calculus acting on them: edge gradient, Laplacian, mass, Dirichlet energy
//! and the Green identity.
//!
//! Sums written over `x, y ∈ S̄` run over ordered adjacent pairs, so every
//! undirected edge contributes twice. This is the convention under which
//! `Σ_{S̄} (Δf) conj(g) = -½ Σ_{x,y} ∇_xy f · conj(∇_xy g)` holds exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Domain;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A function `S̄ → ℂ`, indexed like the vertices of its domain.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFunction<'d> {
    domain: &'d Domain,
    values: Vec<Complex64>,
}

impl<'d> GraphFunction<'d> {
    pub fn zeros(domain: &'d Domain) -> Self {
        Self {
            domain,
            values: vec![ZERO; domain.len()],
        }
    }

    /// Values for every vertex of `S̄`, boundary included.
    pub fn from_values(domain: &'d Domain, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::LengthMismatch {
                expected: domain.len(),
                got: values.len(),
            });
        }
        Ok(Self { domain, values })
    }

    /// Interior values, extended by zero to the boundary. The result always
    /// satisfies the Dirichlet condition.
    pub fn from_interior(domain: &'d Domain, interior: &[Complex64]) -> Result<Self> {
        if interior.len() != domain.n_interior() {
            return Err(Error::LengthMismatch {
                expected: domain.n_interior(),
                got: interior.len(),
            });
        }
        let mut values = vec![ZERO; domain.len()];
        values[..interior.len()].copy_from_slice(interior);
        Ok(Self { domain, values })
    }

    pub fn from_real_interior(domain: &'d Domain, interior: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = interior.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_interior(domain, &c)
    }

    /// Indicator of a single vertex.
    pub fn delta(domain: &'d Domain, v: usize) -> Result<Self> {
        if v >= domain.len() {
            return Err(Error::VertexOutOfRange(v));
        }
        let mut f = Self::zeros(domain);
        f.values[v] = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    pub fn domain(&self) -> &'d Domain {
        self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn interior(&self) -> &[Complex64] {
        &self.values[..self.domain.n_interior()]
    }

    pub fn at(&self, v: usize) -> Complex64 {
        self.values[v]
    }

    pub fn value(&self, name: &str) -> Result<Complex64> {
        Ok(self.values[self.domain.index_of(name)?])
    }

    pub fn is_dirichlet(&self) -> bool {
        self.values[self.domain.n_interior()..]
            .iter()
            .all(|z| *z == ZERO)
    }

    pub fn ensure_dirichlet(&self) -> Result<()> {
        match self.domain.boundary().find(|&v| self.values[v] != ZERO) {
            Some(v) => Err(Error::NotDirichlet(self.domain.name(v).to_owned())),
            None => Ok(()),
        }
    }

    /// Errors unless `domain` is (structurally) the domain this function lives on.
    pub fn ensure_on(&self, domain: &Domain) -> Result<()> {
        if std::ptr::eq(self.domain, domain) || self.domain == domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            domain: self.domain,
            values: self.values.iter().map(Complex64::conj).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    /// Pointwise `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        other.ensure_on(self.domain)?;
        Ok(Self {
            domain: self.domain,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Largest pointwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `∇_xy f = f(y) - f(x)`, defined along edges only.
pub fn gradient(f: &GraphFunction, x: usize, y: usize) -> Result<Complex64> {
    let g = f.domain.graph();
    for v in [x, y] {
        if v >= g.len() {
            return Err(Error::VertexOutOfRange(v));
        }
    }
    if !g.adjacent(x, y) {
        return Err(Error::NotAdjacent(
            g.name(x).to_owned(),
            g.name(y).to_owned(),
        ));
    }
    Ok(f.values[y] - f.values[x])
}

/// `(Δf)(x) = Σ_{y~x} (f(y) - f(x))` at an interior vertex.
pub fn laplacian_apply(f: &GraphFunction, x: usize) -> Result<Complex64> {
    let d = f.domain;
    if x >= d.len() {
        return Err(Error::VertexOutOfRange(x));
    }
    if !d.is_interior(x) {
        return Err(Error::BoundaryVertex(d.name(x).to_owned()));
    }
    Ok(neighbor_sum(f, x))
}

fn neighbor_sum(f: &GraphFunction, x: usize) -> Complex64 {
    let fx = f.values[x];
    f.domain
        .graph()
        .neighbors(x)
        .iter()
        .map(|&y| f.values[y] - fx)
        .sum()
}

/// Laplacian evaluated at every interior vertex.
pub fn laplacian_interior(f: &GraphFunction) -> Vec<Complex64> {
    f.domain.interior().map(|x| neighbor_sum(f, x)).collect()
}

/// The same neighbor sum at every vertex of `S̄`; at boundary vertices only
/// neighbors inside `S̄` contribute.
pub fn laplacian_closure(f: &GraphFunction) -> Vec<Complex64> {
    (0..f.domain.len()).map(|x| neighbor_sum(f, x)).collect()
}

/// `‖f‖² = Σ_{x∈S̄} |f(x)|²`
pub fn mass_norm_sq(f: &GraphFunction) -> f64 {
    f.values.iter().map(Complex64::norm_sqr).sum()
}

/// `‖∇f‖²` summed over ordered adjacent pairs in `S̄`.
pub fn dirichlet_energy(f: &GraphFunction) -> f64 {
    let g = f.domain.graph();
    2.0 * g
        .edges()
        .iter()
        .map(|&(x, y)| (f.values[y] - f.values[x]).norm_sqr())
        .sum::<f64>()
}

/// Both sides of the Green identity: `Σ_{S̄} (Δf)(x) conj(g(x))` and
/// `-½ Σ_{x~y} ∇_xy f conj(∇_xy g)` over ordered pairs.
pub fn green_identity_sides(
    f: &GraphFunction,
    g: &GraphFunction,
) -> Result<(Complex64, Complex64)> {
    g.ensure_on(f.domain)?;
    let lhs: Complex64 = laplacian_closure(f)
        .iter()
        .zip(&g.values)
        .map(|(lf, gx)| lf * gx.conj())
        .sum();
    let graph = f.domain.graph();
    let mut pairs = ZERO;
    for x in 0..graph.len() {
        for &y in graph.neighbors(x) {
            let df = f.values[y] - f.values[x];
            let dg = g.values[y] - g.values[x];
            pairs += df * dg.conj();
        }
    }
    Ok((lhs, -0.5 * pairs))
}

/// `|LHS - RHS|` of the Green identity; zero in exact arithmetic.
pub fn green_identity_residual(f: &GraphFunction, g: &GraphFunction) -> Result<f64> {
    let (lhs, rhs) = green_identity_sides(f, g)?;
    Ok((lhs - rhs).norm())
}

/// `Σ_{x∈S} Σ_{y∈δS, y~x} conj(f(x)) ∇_xy f`, the boundary term of the
/// first Green formula.
pub fn boundary_term(f: &GraphFunction) -> Complex64 {
    let d = f.domain;
    let mut acc = ZERO;
    for x in d.interior() {
        for &y in d.graph().neighbors(x) {
            if !d.is_interior(y) {
                acc += f.values[x].conj() * (f.values[y] - f.values[x]);
            }
        }
    }
    acc
}

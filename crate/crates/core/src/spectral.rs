//! Dirichlet Laplacian on the interior, its eigendecomposition, spectral
//! projections and the Schrödinger kernel `S_t = Σ_j e^{-iλ_j t} φ_j φ_jᵀ`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigen::symmetric_eigen;
use crate::error::{Error, Result};
use crate::function::GraphFunction;
use crate::graph::Domain;

/// `-Δ` restricted to functions vanishing on the boundary, as an
/// `|S| × |S|` matrix in interior order.
#[derive(Debug, Clone)]
pub struct DirichletLaplacian<'d> {
    domain: &'d Domain,
    matrix: DMatrix<f64>,
}

impl<'d> DirichletLaplacian<'d> {
    pub fn domain(&self) -> &'d Domain {
        self.domain
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `L u` for an interior vector.
    pub fn apply(&self, u: &[Complex64]) -> Vec<Complex64> {
        let n = self.matrix.nrows();
        (0..n)
            .map(|i| (0..n).map(|j| u[j] * self.matrix[(i, j)]).sum())
            .collect()
    }
}

/// Assembles `L[x][x] = deg_S̄(x)`, `L[x][y] = -1` for adjacent interior `x, y`.
pub fn assemble(domain: &Domain) -> DirichletLaplacian<'_> {
    let n = domain.n_interior();
    let g = domain.graph();
    let mut matrix = DMatrix::zeros(n, n);
    for x in domain.interior() {
        matrix[(x, x)] = g.degree(x) as f64;
        for &y in g.neighbors(x) {
            if domain.is_interior(y) {
                matrix[(x, y)] = -1.0;
            }
        }
    }
    DirichletLaplacian { domain, matrix }
}

/// Eigenvalues `λ_0 ≤ … ≤ λ_{n-1}` with orthonormal real eigenvectors `φ_j`
/// (columns of `eigenvectors`, interior order).
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    sweeps: usize,
}

pub fn eigendecompose(laplacian: &DirichletLaplacian) -> Result<Spectrum> {
    let e = symmetric_eigen(&laplacian.matrix)?;
    Ok(Spectrum {
        eigenvalues: e.values,
        eigenvectors: e.vectors,
        sweeps: e.sweeps,
    })
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Jacobi sweeps used by the eigensolver.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `φ_j` as a Dirichlet function on `domain`.
    pub fn eigenfunction<'d>(&self, domain: &'d Domain, j: usize) -> Result<GraphFunction<'d>> {
        self.check_mode(j)?;
        let col: Vec<f64> = self.eigenvectors.column(j).iter().copied().collect();
        GraphFunction::from_real_interior(domain, &col)
    }

    fn check_mode(&self, j: usize) -> Result<()> {
        if j >= self.len() {
            return Err(Error::ModeOutOfRange {
                index: j,
                len: self.len(),
            });
        }
        Ok(())
    }

    fn check_function(&self, f: &GraphFunction) -> Result<()> {
        if f.domain().n_interior() != self.len() {
            return Err(Error::DomainMismatch);
        }
        f.ensure_dirichlet()
    }

    /// `c_j = Σ_{x∈S} f(x) φ_j(x)`, the coefficient of `I_j f = c_j φ_j`.
    pub fn project(&self, f: &GraphFunction, j: usize) -> Result<Complex64> {
        self.check_mode(j)?;
        self.check_function(f)?;
        Ok(f.interior()
            .iter()
            .zip(self.eigenvectors.column(j).iter())
            .map(|(fx, phi)| fx * phi)
            .sum())
    }

    /// All coefficients `c_j` of a Dirichlet function.
    pub fn coefficients(&self, f: &GraphFunction) -> Result<Vec<Complex64>> {
        self.check_function(f)?;
        Ok(self.analyze(f.interior()))
    }

    /// `Φᵀ u` for an interior vector.
    pub fn analyze(&self, u: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        (0..n)
            .map(|j| {
                let col = self.eigenvectors.column(j);
                (0..n).map(|x| u[x] * col[x]).sum()
            })
            .collect()
    }

    /// `Φ c` as an interior vector.
    pub fn synthesize(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (j, c) in coeffs.iter().enumerate() {
            for (x, phi) in self.eigenvectors.column(j).iter().enumerate() {
                out[x] += c * phi;
            }
        }
        out
    }

    /// `S_t u` for an interior vector, via the coefficient form.
    pub fn propagate(&self, u: &[Complex64], t: f64) -> Vec<Complex64> {
        let mut c = self.analyze(u);
        for (cj, &lambda) in c.iter_mut().zip(&self.eigenvalues) {
            *cj *= Complex64::from_polar(1.0, -lambda * t);
        }
        self.synthesize(&c)
    }

    /// `S_t(x, y) = Σ_j e^{-iλ_j t} φ_j(x) φ_j(y)`. `S_0` is the identity
    /// matrix exactly.
    pub fn schrodinger_kernel(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.len();
        if t == 0.0 {
            return DMatrix::identity(n, n);
        }
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -l * t))
            .collect();
        let phi = &self.eigenvectors;
        let mut k = DMatrix::<Complex64>::zeros(n, n);
        for x in 0..n {
            for y in x..n {
                let v: Complex64 = (0..n)
                    .map(|j| phases[j] * (phi[(x, j)] * phi[(y, j)]))
                    .sum();
                k[(x, y)] = v;
                k[(y, x)] = v;
            }
        }
        k
    }

    /// `max |S_t S_t* − I|`
    pub fn unitarity_error(&self, t: f64) -> f64 {
        let k = self.schrodinger_kernel(t);
        identity_error(&(&k * k.adjoint()))
    }

    /// `max_j ‖L φ_j − λ_j φ_j‖₂`
    pub fn max_eigen_residual(&self, laplacian: &DirichletLaplacian) -> f64 {
        let l = laplacian.matrix();
        (0..self.len())
            .map(|j| {
                let phi = self.eigenvectors.column(j);
                (l * phi - phi * self.eigenvalues[j]).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `max |ΦᵀΦ − I|`
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.len();
        let gram = self.eigenvectors.transpose() * &self.eigenvectors;
        (gram - DMatrix::identity(n, n)).amax()
    }
}

/// `max |M − I|` entrywise.
pub fn identity_error(m: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

//! Exact spectral solutions of the linear Schrödinger equation
//! `i u_t + Δu = 0` and the wave equation `u_tt = Δu` with Dirichlet data.
//!
//! Every sample is evaluated independently from the eigen-coefficients of the
//! initial data, so there is no time stepping and no error accumulation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{dirichlet_energy, mass_norm_sq, GraphFunction};
use crate::graph::Domain;
use crate::spectral::{assemble, eigendecompose, DirichletLaplacian, Spectrum};

/// Conserved quantities recorded at one sample time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conserved {
    pub mass: f64,
    pub dirichlet_energy: f64,
    pub wave_energy: Option<f64>,
}

impl Conserved {
    pub fn of(u: &GraphFunction) -> Self {
        Self {
            mass: mass_norm_sq(u),
            dirichlet_energy: dirichlet_energy(u),
            wave_energy: None,
        }
    }

    /// Adds the wave energy `½‖∇u‖² + ‖u_t‖²`. The gradient term counts each
    /// edge once (`uᵀLu`); with ordered pairs the sum would not be conserved.
    pub fn with_velocity(u: &GraphFunction, ut: &GraphFunction) -> Self {
        let base = Self::of(u);
        Self {
            wave_energy: Some(0.5 * base.dirichlet_energy + mass_norm_sq(ut)),
            ..base
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory<'d> {
    pub times: Vec<f64>,
    pub states: Vec<GraphFunction<'d>>,
    pub velocities: Option<Vec<GraphFunction<'d>>>,
    pub conserved: Vec<Conserved>,
}

/// Largest relative drift of each conserved quantity from its first sample.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Drift {
    pub mass: f64,
    pub dirichlet_energy: f64,
    pub wave_energy: Option<f64>,
}

fn relative_drift(values: impl Iterator<Item = f64>) -> f64 {
    let mut first = None;
    let mut worst: f64 = 0.0;
    for v in values {
        let v0 = *first.get_or_insert(v);
        worst = worst.max((v - v0).abs() / v0.abs().max(1.0));
    }
    worst
}

impl Trajectory<'_> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Drift relative to `max(1, |value at first sample|)`.
    pub fn drift(&self) -> Drift {
        let c = &self.conserved;
        let wave = c
            .first()
            .and_then(|c| c.wave_energy)
            .map(|_| relative_drift(c.iter().map(|c| c.wave_energy.unwrap_or(f64::NAN))));
        Drift {
            mass: relative_drift(c.iter().map(|c| c.mass)),
            dirichlet_energy: relative_drift(c.iter().map(|c| c.dirichlet_energy)),
            wave_energy: wave,
        }
    }
}

/// Domain together with its Dirichlet Laplacian and spectrum; the shared
/// state behind all linear solves on one domain.
#[derive(Debug, Clone)]
pub struct SpectralPropagator<'d> {
    laplacian: DirichletLaplacian<'d>,
    spectrum: Spectrum,
}

impl<'d> SpectralPropagator<'d> {
    pub fn new(domain: &'d Domain) -> Result<Self> {
        let laplacian = assemble(domain);
        let spectrum = eigendecompose(&laplacian)?;
        Ok(Self {
            laplacian,
            spectrum,
        })
    }

    pub fn domain(&self) -> &'d Domain {
        self.laplacian.domain()
    }

    pub fn laplacian(&self) -> &DirichletLaplacian<'d> {
        &self.laplacian
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    fn coefficients(&self, f: &GraphFunction) -> Result<Vec<Complex64>> {
        f.ensure_on(self.domain())?;
        self.spectrum.coefficients(f)
    }

    fn rebind(&self, f: &GraphFunction) -> GraphFunction<'d> {
        GraphFunction::from_values(self.domain(), f.values().to_vec()).expect("same domain")
    }

    fn function(&self, coeffs: &[Complex64]) -> GraphFunction<'d> {
        GraphFunction::from_interior(self.domain(), &self.spectrum.synthesize(coeffs))
            .expect("spectrum matches domain")
    }

    pub fn schrodinger(&self, f: &GraphFunction) -> Result<SchrodingerSolution<'_, 'd>> {
        Ok(SchrodingerSolution {
            propagator: self,
            coeffs: self.coefficients(f)?,
            initial: self.rebind(f),
        })
    }

    pub fn wave(&self, f: &GraphFunction, g: &GraphFunction) -> Result<WaveSolution<'_, 'd>> {
        Ok(WaveSolution {
            propagator: self,
            position: self.coefficients(f)?,
            velocity: self.coefficients(g)?,
            initial: (self.rebind(f), self.rebind(g)),
        })
    }
}

/// `u(t) = Σ_j c_j e^{-iλ_j t} φ_j`. At `t = 0` the initial datum itself is
/// returned.
#[derive(Debug, Clone)]
pub struct SchrodingerSolution<'p, 'd> {
    propagator: &'p SpectralPropagator<'d>,
    coeffs: Vec<Complex64>,
    initial: GraphFunction<'d>,
}

impl<'d> SchrodingerSolution<'_, 'd> {
    fn evolved(&self, t: f64, factor: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .zip(self.propagator.spectrum.eigenvalues())
            .map(|(c, &l)| c * factor(l) * Complex64::from_polar(1.0, -l * t))
            .collect()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn state(&self, t: f64) -> GraphFunction<'d> {
        if t == 0.0 {
            return self.initial.clone();
        }
        self.propagator
            .function(&self.evolved(t, |_| Complex64::new(1.0, 0.0)))
    }

    /// Analytic `u_t(t) = Σ_j (-iλ_j) c_j e^{-iλ_j t} φ_j`.
    pub fn time_derivative(&self, t: f64) -> GraphFunction<'d> {
        self.propagator
            .function(&self.evolved(t, |l| Complex64::new(0.0, -l)))
    }

    pub fn trajectory(&self, times: &[f64]) -> Trajectory<'d> {
        let states: Vec<_> = times.iter().map(|&t| self.state(t)).collect();
        let conserved = states.iter().map(Conserved::of).collect();
        Trajectory {
            times: times.to_vec(),
            states,
            velocities: None,
            conserved,
        }
    }
}

/// `sin(ωt)/ω`, continuous at `ω = 0`.
fn sin_over(omega: f64, t: f64) -> f64 {
    if omega == 0.0 {
        t
    } else {
        (omega * t).sin() / omega
    }
}

/// `u(t) = Σ_j [a_j cos(ω_j t) + b_j sin(ω_j t)/ω_j] φ_j`, `ω_j = √λ_j`.
#[derive(Debug, Clone)]
pub struct WaveSolution<'p, 'd> {
    propagator: &'p SpectralPropagator<'d>,
    position: Vec<Complex64>,
    velocity: Vec<Complex64>,
    initial: (GraphFunction<'d>, GraphFunction<'d>),
}

impl<'d> WaveSolution<'_, 'd> {
    fn combine(&self, fa: impl Fn(f64) -> f64, fb: impl Fn(f64) -> f64) -> GraphFunction<'d> {
        let c: Vec<Complex64> = self
            .position
            .iter()
            .zip(&self.velocity)
            .zip(self.propagator.spectrum.eigenvalues())
            .map(|((a, b), &l)| {
                let w = l.max(0.0).sqrt();
                a * fa(w) + b * fb(w)
            })
            .collect();
        self.propagator.function(&c)
    }

    pub fn state(&self, t: f64) -> GraphFunction<'d> {
        if t == 0.0 {
            return self.initial.0.clone();
        }
        self.combine(|w| (w * t).cos(), |w| sin_over(w, t))
    }

    pub fn velocity(&self, t: f64) -> GraphFunction<'d> {
        if t == 0.0 {
            return self.initial.1.clone();
        }
        self.combine(|w| -w * (w * t).sin(), |w| (w * t).cos())
    }

    pub fn acceleration(&self, t: f64) -> GraphFunction<'d> {
        self.combine(|w| -w * w * (w * t).cos(), |w| -w * (w * t).sin())
    }

    pub fn trajectory(&self, times: &[f64]) -> Trajectory<'d> {
        let states: Vec<_> = times.iter().map(|&t| self.state(t)).collect();
        let velocities: Vec<_> = times.iter().map(|&t| self.velocity(t)).collect();
        let conserved = states
            .iter()
            .zip(&velocities)
            .map(|(u, v)| Conserved::with_velocity(u, v))
            .collect();
        Trajectory {
            times: times.to_vec(),
            states,
            velocities: Some(velocities),
            conserved,
        }
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "non-finite sample time {t}"
        )));
    }
    Ok(())
}

/// Solves `i u_t + Δu = 0`, `u(0) = f` on `domain` at the given times.
pub fn solve_schrodinger<'d>(
    domain: &'d Domain,
    f: &GraphFunction,
    times: &[f64],
) -> Result<Trajectory<'d>> {
    check_times(times)?;
    let prop = SpectralPropagator::new(domain)?;
    Ok(prop.schrodinger(f)?.trajectory(times))
}

/// Solves `u_tt = Δu`, `u(0) = f`, `u_t(0) = g` on `domain` at the given times.
pub fn solve_wave<'d>(
    domain: &'d Domain,
    f: &GraphFunction,
    g: &GraphFunction,
    times: &[f64],
) -> Result<Trajectory<'d>> {
    check_times(times)?;
    let prop = SpectralPropagator::new(domain)?;
    Ok(prop.wave(f, g)?.trajectory(times))
}

//! Nonlinear Schrödinger equation `i u_t + Δu = |u|^{p-1} u` by Picard
//! iteration on the Duhamel formula
//!
//! ```text
//! u(τ) = S_τ f0 − i ∫₀^τ S_{τ−s} N(u(s)) ds,    N(u) = |u|^{p−1} u,
//! ```
//!
//! restarted at the end of every substep. The time integral is taken on a
//! uniform sub-grid of [`SUBINTERVALS`] panels per substep with Simpson
//! weights; the propagator factors are exact in the eigenbasis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{Conserved, SpectralPropagator, Trajectory};
use crate::function::GraphFunction;
use crate::graph::Domain;

/// Quadrature panels per substep.
pub const SUBINTERVALS: usize = 8;

pub const DEFAULT_SUBSTEP: f64 = 0.01;
pub const DEFAULT_PICARD_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_PICARD_ITERS: usize = 50;

#[derive(Debug, Clone)]
pub struct NlsProblem<'d> {
    pub domain: &'d Domain,
    /// Nonlinearity exponent, `p > 1`.
    pub p: f64,
    pub initial: GraphFunction<'d>,
    /// Horizon `T`.
    pub horizon: f64,
    pub picard_tol: f64,
    pub max_picard_iters: usize,
    pub substep: f64,
    /// When false the nonlinearity is switched off and the solver reduces to
    /// the linear flow. Only useful for testing.
    pub nonlinear: bool,
}

impl<'d> NlsProblem<'d> {
    pub fn new(
        domain: &'d Domain,
        p: f64,
        initial: GraphFunction<'d>,
        horizon: f64,
    ) -> Result<Self> {
        let prob = Self {
            domain,
            p,
            initial,
            horizon,
            picard_tol: DEFAULT_PICARD_TOL,
            max_picard_iters: DEFAULT_MAX_PICARD_ITERS,
            substep: DEFAULT_SUBSTEP.min(horizon),
            nonlinear: true,
        };
        prob.validate()?;
        Ok(prob)
    }

    pub fn with_substep(mut self, substep: f64) -> Result<Self> {
        self.substep = substep;
        self.validate()?;
        Ok(self)
    }

    pub fn with_picard(mut self, tol: f64, max_iters: usize) -> Result<Self> {
        self.picard_tol = tol;
        self.max_picard_iters = max_iters;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.p > 1.0 && self.p.is_finite()) {
            return bad(format!("exponent p = {} must exceed 1", self.p));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad(format!("horizon T = {} must be positive", self.horizon));
        }
        if !(self.substep > 0.0 && self.substep <= self.horizon) {
            return bad(format!(
                "substep {} must lie in (0, T = {}]",
                self.substep, self.horizon
            ));
        }
        if self.picard_tol.is_nan() || self.picard_tol <= 0.0 {
            return bad(format!(
                "Picard tolerance {} must be positive",
                self.picard_tol
            ));
        }
        if self.max_picard_iters == 0 {
            return bad("at least one Picard iteration is required".into());
        }
        self.initial.ensure_on(self.domain)?;
        self.initial.ensure_dirichlet()
    }
}

/// Result of one Duhamel substep.
#[derive(Debug, Clone)]
pub struct PicardStep<'d> {
    pub state: GraphFunction<'d>,
    pub iterations: usize,
    /// `sup_k ‖uⁿ⁺¹(s_k) − uⁿ(s_k)‖₂` for each iteration.
    pub gaps: Vec<f64>,
}

impl PicardStep<'_> {
    /// `gap_n / gap_{n−1}` for `n ≥ 1`, skipping exact zeros.
    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.gaps
            .windows(2)
            .filter(|w| w[0] > 0.0)
            .map(|w| w[1] / w[0])
            .collect()
    }

    pub fn max_contraction_ratio(&self) -> f64 {
        self.contraction_ratios().into_iter().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct NlsTrajectory<'d> {
    pub trajectory: Trajectory<'d>,
    pub substeps: usize,
    pub max_picard_iterations: usize,
    pub max_contraction_ratio: f64,
}

/// Quadrature weights (in units of the panel width) for `∫₀^{s_k}` using the
/// nodes `s_0..s_k`, plus node 2 for `k = 1`.
fn quadrature_weights() -> [[f64; SUBINTERVALS + 1]; SUBINTERVALS + 1] {
    let mut w = [[0.0; SUBINTERVALS + 1]; SUBINTERVALS + 1];
    // k = 1: integrate the quadratic through s_0, s_1, s_2 over [s_0, s_1]
    w[1][0] = 5.0 / 12.0;
    w[1][1] = 8.0 / 12.0;
    w[1][2] = -1.0 / 12.0;
    for (k, row) in w.iter_mut().enumerate().skip(2) {
        let simpson_end = if k % 2 == 0 { k } else { k - 3 };
        for pair in (0..simpson_end).step_by(2) {
            row[pair] += 1.0 / 3.0;
            row[pair + 1] += 4.0 / 3.0;
            row[pair + 2] += 1.0 / 3.0;
        }
        if k % 2 == 1 {
            // Simpson 3/8 on the last three panels
            let s = simpson_end;
            row[s] += 3.0 / 8.0;
            row[s + 1] += 9.0 / 8.0;
            row[s + 2] += 9.0 / 8.0;
            row[s + 3] += 3.0 / 8.0;
        }
    }
    w
}

fn l2(u: &[Complex64]) -> f64 {
    u.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

pub struct NlsSolver<'a, 'd> {
    problem: &'a NlsProblem<'d>,
    propagator: SpectralPropagator<'d>,
    weights: [[f64; SUBINTERVALS + 1]; SUBINTERVALS + 1],
}

impl<'a, 'd> NlsSolver<'a, 'd> {
    pub fn new(problem: &'a NlsProblem<'d>) -> Result<Self> {
        problem.validate()?;
        Ok(Self {
            problem,
            propagator: SpectralPropagator::new(problem.domain)?,
            weights: quadrature_weights(),
        })
    }

    pub fn propagator(&self) -> &SpectralPropagator<'d> {
        &self.propagator
    }

    fn nonlinearity(&self, u: &[Complex64]) -> Vec<Complex64> {
        let q = self.problem.p - 1.0;
        u.iter().map(|z| z * z.norm().powf(q)).collect()
    }

    /// Advances `f0` (the state at `t0`) by `tau ≤ substep`.
    pub fn duhamel_picard(&self, t0: f64, f0: &GraphFunction, tau: f64) -> Result<PicardStep<'d>> {
        let prob = self.problem;
        if !(tau >= 0.0 && tau <= prob.substep * (1.0 + 1e-12)) {
            return Err(Error::InvalidParameter(format!(
                "step {tau} outside [0, substep = {}]",
                prob.substep
            )));
        }
        f0.ensure_on(prob.domain)?;
        f0.ensure_dirichlet()?;

        let spec = self.propagator.spectrum();
        let lambdas = spec.eigenvalues();
        let h = tau / SUBINTERVALS as f64;
        // e^{-iλ d h} for panel offsets d = 0..=SUBINTERVALS
        let phases: Vec<Vec<Complex64>> = (0..=SUBINTERVALS)
            .map(|d| {
                lambdas
                    .iter()
                    .map(|&l| Complex64::from_polar(1.0, -l * d as f64 * h))
                    .collect()
            })
            .collect();

        let c0 = spec.analyze(f0.interior());
        let linear: Vec<Vec<Complex64>> = phases
            .iter()
            .map(|ph| c0.iter().zip(ph).map(|(c, e)| c * e).collect())
            .collect();
        let mut nodes: Vec<Vec<Complex64>> = linear.iter().map(|c| spec.synthesize(c)).collect();

        let scale = nodes.iter().map(|u| l2(u)).fold(1.0, f64::max);
        let tol = prob.picard_tol * scale;
        let minus_i = Complex64::new(0.0, -1.0);
        let mut gaps = Vec::new();

        for iteration in 1..=prob.max_picard_iters {
            if !prob.nonlinear {
                gaps.push(0.0);
                break;
            }
            let forcing: Vec<Vec<Complex64>> = nodes
                .iter()
                .map(|u| spec.analyze(&self.nonlinearity(u)))
                .collect();
            let mut gap: f64 = 0.0;
            let mut next = Vec::with_capacity(nodes.len());
            for (k, lin) in linear.iter().enumerate() {
                let mut coeff = lin.clone();
                for (m, w) in self.weights[k].iter().enumerate() {
                    if *w == 0.0 {
                        continue;
                    }
                    let ph = &phases[k.abs_diff(m)];
                    // the k = 1 stencil reaches forward to s_2: e^{-iλ(s_1 − s_2)} = conj
                    let forward = m > k;
                    for j in 0..coeff.len() {
                        let e = if forward { ph[j].conj() } else { ph[j] };
                        coeff[j] += minus_i * (w * h) * e * forcing[m][j];
                    }
                }
                let u = spec.synthesize(&coeff);
                let diff: Vec<Complex64> = u.iter().zip(&nodes[k]).map(|(a, b)| a - b).collect();
                gap = gap.max(l2(&diff));
                next.push(u);
            }
            nodes = next;
            gaps.push(gap);

            let ratio = match gaps.len() {
                n if n >= 2 && gaps[n - 2] > 0.0 => gaps[n - 1] / gaps[n - 2],
                _ => f64::NAN,
            };
            if !gap.is_finite() {
                return Err(Error::PicardNotConverged {
                    t0,
                    tau,
                    iterations: iteration,
                    last_ratio: ratio,
                });
            }
            if gap <= tol {
                break;
            }
            if iteration == prob.max_picard_iters {
                return Err(Error::PicardNotConverged {
                    t0,
                    tau,
                    iterations: iteration,
                    last_ratio: ratio,
                });
            }
        }

        let state = GraphFunction::from_interior(prob.domain, &nodes[SUBINTERVALS])?;
        Ok(PicardStep {
            state,
            iterations: gaps.len(),
            gaps,
        })
    }

    /// Propagates the initial datum to each requested time (ascending, within
    /// `[0, T]`), restarting the Duhamel expansion after every substep.
    pub fn solve(&self, times: &[f64]) -> Result<NlsTrajectory<'d>> {
        let prob = self.problem;
        let mut prev = 0.0;
        for &t in times {
            if !(t >= prev && t <= prob.horizon) {
                return Err(Error::InvalidParameter(format!(
                    "sample times must be ascending within [0, {}]; got {t}",
                    prob.horizon
                )));
            }
            prev = t;
        }

        let mut current = GraphFunction::from_values(prob.domain, prob.initial.values().to_vec())?;
        let mut now = 0.0;
        let mut substeps = 0;
        let mut max_iters = 0;
        let mut max_ratio: f64 = 0.0;
        let mut states = Vec::with_capacity(times.len());
        for &t in times {
            if t > now {
                let n = ((t - now) / prob.substep * (1.0 - 1e-12)).ceil().max(1.0) as usize;
                let tau = (t - now) / n as f64;
                for i in 0..n {
                    let step = self.duhamel_picard(now + i as f64 * tau, &current, tau)?;
                    max_iters = max_iters.max(step.iterations);
                    max_ratio = max_ratio.max(step.max_contraction_ratio());
                    current = step.state;
                }
                substeps += n;
                now = t;
            }
            states.push(current.clone());
        }
        let conserved = states.iter().map(Conserved::of).collect();
        Ok(NlsTrajectory {
            trajectory: Trajectory {
                times: times.to_vec(),
                states,
                velocities: None,
                conserved,
            },
            substeps,
            max_picard_iterations: max_iters,
            max_contraction_ratio: max_ratio,
        })
    }
}

/// One Duhamel substep of length `tau` from state `f0` at time `t0`.
pub fn duhamel_picard<'d>(
    problem: &NlsProblem<'d>,
    t0: f64,
    f0: &GraphFunction,
    tau: f64,
) -> Result<PicardStep<'d>> {
    NlsSolver::new(problem)?.duhamel_picard(t0, f0, tau)
}

pub fn solve_nls<'d>(problem: &NlsProblem<'d>, times: &[f64]) -> Result<NlsTrajectory<'d>> {
    NlsSolver::new(problem)?.solve(times)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Domain {
        Domain::from_edges(&[("a", "b"), ("b", "c")], &["b"]).unwrap()
    }

    #[test]
    fn weights_integrate_polynomials() {
        // every row must integrate 1, s, s² exactly over [0, k]
        let w = quadrature_weights();
        for (k, row) in w.iter().enumerate() {
            for deg in 0..3 {
                let approx: f64 = row
                    .iter()
                    .enumerate()
                    .map(|(m, wm)| wm * (m as f64).powi(deg))
                    .sum();
                let exact = (k as f64).powi(deg + 1) / (deg + 1) as f64;
                assert!((approx - exact).abs() < 1e-12, "k={k} deg={deg}");
            }
        }
    }

    #[test]
    fn zero_datum_is_fixed() {
        let d = p3();
        let prob = NlsProblem::new(&d, 3.0, GraphFunction::zeros(&d), 1.0).unwrap();
        let step = duhamel_picard(&prob, 0.0, &prob.initial, 0.01).unwrap();
        assert!(step.state.values().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn linear_limit_matches_propagator() {
        let d = Domain::from_edges(&[("0", "1"), ("1", "2"), ("2", "3")], &["1", "2"]).unwrap();
        let f = GraphFunction::from_interior(
            &d,
            &[Complex64::new(0.4, -1.0), Complex64::new(2.0, 0.5)],
        )
        .unwrap();
        let mut prob = NlsProblem::new(&d, 3.0, f.clone(), 1.0).unwrap();
        prob.nonlinear = false;
        let solver = NlsSolver::new(&prob).unwrap();
        let step = solver.duhamel_picard(0.0, &f, 0.01).unwrap();
        let exact = solver.propagator().spectrum().propagate(f.interior(), 0.01);
        for (a, b) in step.state.interior().iter().zip(&exact) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn single_vertex_phase_rotation() {
        let d = p3();
        let a = Complex64::new(0.6, 0.8);
        let f = GraphFunction::from_interior(&d, &[a]).unwrap();
        let prob = NlsProblem::new(&d, 3.0, f, 1.0).unwrap();
        let step = duhamel_picard(&prob, 0.0, &prob.initial, 0.01).unwrap();
        let exact = a * Complex64::from_polar(1.0, -(2.0 + 1.0) * 0.01);
        assert!((step.state.at(0) - exact).norm() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        let d = p3();
        let f = GraphFunction::zeros(&d);
        assert!(NlsProblem::new(&d, 1.0, f.clone(), 1.0).is_err());
        assert!(NlsProblem::new(&d, 3.0, f.clone(), 0.0).is_err());
        assert!(NlsProblem::new(&d, 3.0, f.clone(), 1.0)
            .unwrap()
            .with_substep(2.0)
            .is_err());
        let prob = NlsProblem::new(&d, 3.0, f, 1.0).unwrap();
        assert!(solve_nls(&prob, &[0.5, 0.2]).is_err());
        assert!(solve_nls(&prob, &[1.5]).is_err());
        assert!(duhamel_picard(&prob, 0.0, &prob.initial, 0.5).is_err());
    }
}

//! Schrödinger, wave and nonlinear Schrödinger equations on finite graphs with
//! Dirichlet boundary conditions, solved with exact spectral propagators.
//!
//! The pieces, bottom up:
//!
//! - [`graph`]: graphs, interior/boundary [`Domain`]s, the JSON input document.
//! - [`function`]: [`GraphFunction`] and the discrete calculus (gradient,
//!   Laplacian, mass, Dirichlet energy, Green identity).
//! - [`spectral`]: Dirichlet Laplacian, eigendecomposition, Schrödinger kernel.
//! - [`evolution`]: exact linear Schrödinger and wave solutions.
//! - [`nonlinear`]: Duhamel/Picard NLS propagation and Nehari ground states.
//!
//! ```
//! use graphpde::{parse_graph, solve_nls, Complex64, GraphFunction, NlsProblem, SpectralPropagator};
//!
//! let domain = parse_graph(r#"{"edges": [["a","b"],["b","c"]], "interior": ["b"]}"#)?;
//! let f = GraphFunction::from_interior(&domain, &[Complex64::new(1.0, 0.0)])?;
//!
//! let prop = SpectralPropagator::new(&domain)?;
//! let traj = prop.schrodinger(&f)?.trajectory(&[0.0, 0.5, 1.0]);
//! assert!(traj.drift().mass < 1e-12);
//!
//! let nls = NlsProblem::new(&domain, 3.0, f, 1.0)?;
//! let out = solve_nls(&nls, &[0.0, 1.0])?;
//! assert!(out.max_contraction_ratio < 1.0);
//! # Ok::<(), graphpde::Error>(())
//! ```

pub mod eigen;
pub mod error;
pub mod evolution;
pub mod function;
pub mod generate;
pub mod graph;
pub mod nonlinear;
pub mod spectral;

pub use error::{Error, Result};
pub use evolution::{
    solve_schrodinger, solve_wave, Conserved, Drift, SchrodingerSolution, SpectralPropagator,
    Trajectory, WaveSolution,
};
pub use function::{
    boundary_term, dirichlet_energy, gradient, green_identity_residual, green_identity_sides,
    laplacian_apply, laplacian_closure, laplacian_interior, mass_norm_sq, GraphFunction,
};
pub use graph::{parse_graph, Domain, Graph, GraphDocument};
pub use nonlinear::{
    duhamel_picard, nehari_functional, ray_projection, solve_ground_state, solve_nls, GroundState,
    GroundStateProblem, NehariValues, NlsProblem, NlsSolver, NlsTrajectory, PicardStep,
};
pub use spectral::{assemble, eigendecompose, identity_error, DirichletLaplacian, Spectrum};

pub use num_complex::Complex64;

//! Nonlinear Schrödinger propagation and Nehari ground states.

pub mod duhamel;
pub mod ground_state;

pub use duhamel::{
    duhamel_picard, solve_nls, NlsProblem, NlsSolver, NlsTrajectory, PicardStep,
    DEFAULT_MAX_PICARD_ITERS, DEFAULT_PICARD_TOL, DEFAULT_SUBSTEP,
};
pub use ground_state::{
    nehari_functional, ray_projection, solve_ground_state, GroundState, GroundStateProblem,
    NehariValues,
};

//! Radial finite-volume solver for `u_t = Delta u + |u|^{4/3} u` in R^5.

mod checkpoint;
mod config;
mod grid;
mod residual;
mod scheme;
mod simulate;

pub use checkpoint::{Checkpoint, CHECKPOINT_HEADER};
pub use config::{InitialData, Profile, SimConfig};
pub use grid::{Field, GridParams, RadialGrid, CORE_NODES, DEFAULT_MAX_NODES, MIN_NODES};
pub use residual::{
    ansatz_residual, ansatz_residual_with, calibrate_residual, residual_grid, residual_profile, residual_states, ResidualTerms,
    RESIDUAL_CONSTANT, RESIDUAL_CORE_DIVISOR, RESIDUAL_T0,
};
pub use scheme::{laplacian, laplacian_values, reaction, StepControl, StepOutcome, Stepper};
pub use simulate::{
    ansatz_scale, build_grid, detect_blowup, initial_field, simulate, simulate_from, BlowupCriteria,
    SimReport, SimStatus, TrajectoryPoint,
};

//! Reduced dynamics of the bubble scale `mu0(t)` driven by the heat evolution of the tail.
//!
//! In five dimensions the orthogonality condition integrates to
//! `mu0(t) = ((1/2) int_M^t A(ln ln s) Psi0(0, s) ds)^2`.

mod ansatz;
mod ball;
mod rates;
mod solve;

pub use ansatz::{
    ansatz_bubble, calibrate_inner_source, inner_source_check, inner_source_magnitude, inner_source_ratio,
    leading_ansatz, orthogonality_residual, INNER_SOURCE_CONSTANT,
};
pub use ball::{a_tabulated, ball_integrals};
pub use rates::{
    correction_ratios, fk_rate, mu_star, scale_from_supnorm, supnorm_from_scale, vtilde,
    CorrectionRatios, RatePrediction, Regime, ALPHA5,
};
pub use solve::{
    beta_coefficient, check_window, cutoff_radius, derivative_mismatch, log_grid, mu0_solve,
    tau_of_t, ModulationState, Mu0Solver, PsiMode, DEFAULT_C_TAU, DEFAULT_M, DEFAULT_SWITCH,
    SWITCH_TOL,
};

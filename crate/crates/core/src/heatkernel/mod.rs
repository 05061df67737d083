//! Heat propagation of radial power-law data and its large-time asymptotics.
//!
//! `Psi0(x, t) = (4 pi t)^{-n/2} int exp(-|x - z|^2 / 4t) psi0(z) dz` is reduced by
//! radial symmetry to one radial integral with a closed-form angular kernel.

mod asymptotics;
mod bounds;
mod convolve;
mod datum;

pub use asymptotics::{
    c_constant, c_constant_quadrature, envelope_value, g_envelope_exponent, kernel_check,
    kernel_check_slope, centre_heat_value, v_rate, EnvelopeOrder, KernelAsymptotics, KernelCheckRow,
    LogFactor, SlopeCheck,
};
pub use bounds::{
    calibrate_center_envelope, calibrate_rough_constant, centre_sweep_times, center_bounds, center_envelope_constant,
    gamma_tilde, rough_bound_check, rough_envelope, tail_limit, TailLimit, CENTRE_T_MIN, DEFAULT_EPSILON,
    ROUGH_BOUND_CONSTANT,
};
pub use convolve::{
    gradient_sup, heat_convolve, heat_convolve_with, AngularRule, ConvolveOptions, HEAT_TOL,
};
pub use datum::{FnDatum, GaussianDatum, RadialDatum, TailData, TailShape};

//! Observables, slope fits and verdicts.

mod observables;
mod rates;
mod threshold;

pub use observables::{dirichlet_energy, energy, energy_trapezoid, flow_energy, sup_norm};
pub use rates::{
    compare_rates, compare_slope, loglog_slope, tail_window, RateReport, Verdict, DEFAULT_FIT_FRACTION,
    INCONCLUSIVE_STDERR, MIN_FIT_POINTS, SLOPE_FLOOR,
};
pub use threshold::{bisection_steps, blows_up, ode_threshold, threshold_bisect, HorizonCheck, ThresholdResult, Trial};

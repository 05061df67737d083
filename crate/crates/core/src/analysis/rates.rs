use serde::Serialize;

use crate::error::{FujdError, Result};
use crate::fit::{linear_fit, LinearFit};
use crate::modulation::{Regime, RatePrediction};

pub const MIN_FIT_POINTS: usize = 10;
/// Fraction of the `ln t` span, counted from the end, used by default.
pub const DEFAULT_FIT_FRACTION: f64 = 0.6;
/// Slope stderr above which a comparison is inconclusive.
pub const INCONCLUSIVE_STDERR: f64 = 0.1;
pub const SLOPE_FLOOR: f64 = 0.1;

/// Least-squares slope of `ln(y / (ln t)^m)` against `ln t` over `t in [window.0, window.1]`.
pub fn loglog_slope(series: &[(f64, f64)], window: (f64, f64), log_power: f64) -> Result<LinearFit> {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for &(t, y) in series {
        if t < window.0 || t > window.1 {
            continue;
        }
        if !(y > 0.0) || !(t > 1.0 || log_power == 0.0) || !(t > 0.0) {
            return Err(FujdError::Domain(format!("need y > 0 (and t > 1 with a log factor), got ({t}, {y})")));
        }
        xs.push(t.ln());
        ys.push(y.ln() - log_power * t.ln().ln());
    }
    if xs.len() < MIN_FIT_POINTS {
        return Err(FujdError::InsufficientPoints { found: xs.len(), needed: MIN_FIT_POINTS });
    }
    linear_fit(&xs, &ys)
}

/// The last `fraction` of the series' `ln t` span.
pub fn tail_window(series: &[(f64, f64)], fraction: f64) -> Result<(f64, f64)> {
    let (Some(first), Some(last)) = (series.first(), series.last()) else {
        return Err(FujdError::InsufficientPoints { found: 0, needed: MIN_FIT_POINTS });
    };
    let (a, b) = (first.0.ln(), last.0.ln());
    Ok(((b - fraction * (b - a)).exp(), last.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateReport {
    pub gamma: f64,
    pub t_a: f64,
    pub t_b: f64,
    pub points: usize,
    pub measured_slope: f64,
    pub stderr: f64,
    pub predicted_slope: f64,
    /// Power `m` of `ln t` divided out before the fit; zero when no log factor is flagged.
    pub log_power: f64,
    pub verdict: Verdict,
}

impl RateReport {
    /// `consistent` iff `|measured - predicted| <= max(3 stderr, 0.1)`.
    pub fn verdict_for(measured: f64, stderr: f64, predicted: f64) -> Verdict {
        if stderr > INCONCLUSIVE_STDERR {
            Verdict::Inconclusive
        } else if (measured - predicted).abs() <= (3.0 * stderr).max(SLOPE_FLOOR) {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        }
    }
}

/// Fits the sup-norm series against an explicit exponent.
pub fn compare_slope(
    series: &[(f64, f64)],
    gamma: f64,
    window: (f64, f64),
    predicted_slope: f64,
    log_power: f64,
) -> Result<RateReport> {
    let fit = loglog_slope(series, window, log_power)?;
    let points = series.iter().filter(|(t, _)| *t >= window.0 && *t <= window.1).count();
    Ok(RateReport {
        gamma,
        t_a: window.0,
        t_b: window.1,
        points,
        measured_slope: fit.slope,
        stderr: fit.stderr,
        predicted_slope,
        log_power,
        verdict: RateReport::verdict_for(fit.slope, fit.stderr, predicted_slope),
    })
}

/// Compares a sup-norm series `(t, ||u||_inf)` with the predicted rate for `gamma`
/// (log factor divided out at `gamma = 2`). `window` defaults to the last 60% of the span.
pub fn compare_rates(series: &[(f64, f64)], gamma: f64, window: Option<(f64, f64)>) -> Result<RateReport> {
    let pred = RatePrediction::new(gamma)?;
    let window = match window {
        Some(w) => w,
        None => tail_window(series, DEFAULT_FIT_FRACTION)?,
    };
    let log_power = if pred.regime == Regime::Critical { pred.supnorm_log_power() } else { 0.0 };
    compare_slope(series, gamma, window, pred.supnorm_exponent(), log_power)
}

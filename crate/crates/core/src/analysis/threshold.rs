use serde::Serialize;

use crate::error::{FujdError, Result};
use crate::pde::{simulate, InitialData, SimConfig, SimStatus};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Trial {
    pub alpha: f64,
    pub blew_up: bool,
    /// Blow-up time, if any.
    pub t_b: Option<f64>,
}

/// Verdicts of the final endpoints rerun with the horizon doubled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizonCheck {
    pub t_end: f64,
    pub lo_still_global: bool,
    pub hi_still_blows_up: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    /// Largest amplitude seen to stay global within the horizon.
    pub alpha_lo: f64,
    /// Smallest amplitude seen to blow up.
    pub alpha_hi: f64,
    pub width: f64,
    /// Number of bracket halvings.
    pub iterations: usize,
    pub trials: Vec<Trial>,
    pub horizon: Option<HorizonCheck>,
}

/// `true` if `alpha phi` blows up before `config.t_end`.
pub fn blows_up(config: &SimConfig, alpha: f64) -> Result<Trial> {
    let InitialData::ScaledProfile { profile, .. } = config.initial else {
        return Err(FujdError::Config("threshold search needs scaled_profile initial data".into()));
    };
    let mut c = config.clone();
    c.initial = InitialData::ScaledProfile { alpha, profile };
    let report = simulate(&c)?;
    match report.status {
        SimStatus::BlewUp { t_b } => Ok(Trial { alpha, blew_up: true, t_b: Some(t_b) }),
        SimStatus::Completed | SimStatus::DecayedBelow { .. } => Ok(Trial { alpha, blew_up: false, t_b: None }),
        s => Err(FujdError::Config(format!("alpha = {alpha}: run ended with {s}, raise max_steps"))),
    }
}

/// Halvings needed to shrink `range` to `width`.
pub fn bisection_steps(range: f64, width: f64) -> usize {
    (range / width).log2().ceil().max(0.0) as usize
}

/// Bisects `alpha` in `[alpha_lo, alpha_hi]` until the bracket is at most `width`, with
/// "blew up before `t_end`" as the oracle. The two children of each midpoint are
/// evaluated concurrently with it, so each round of three runs halves the bracket twice.
/// With `check_horizon`, both endpoints are rerun up to `t_start + 2 (t_end - t_start)`.
pub fn threshold_bisect(
    config: &SimConfig,
    alpha_lo: f64,
    alpha_hi: f64,
    width: f64,
    check_horizon: bool,
) -> Result<ThresholdResult> {
    if !(alpha_lo > 0.0 && alpha_hi > alpha_lo) || !(width > 0.0) {
        return Err(FujdError::BracketInvalid(format!(
            "need 0 < alpha_lo < alpha_hi and width > 0, got [{alpha_lo}, {alpha_hi}], {width}"
        )));
    }
    let (lo_t, hi_t) = rayon::join(|| blows_up(config, alpha_lo), || blows_up(config, alpha_hi));
    let (lo_t, hi_t) = (lo_t?, hi_t?);
    if lo_t.blew_up {
        return Err(FujdError::BracketInvalid(format!("alpha_lo = {alpha_lo} blows up")));
    }
    if !hi_t.blew_up {
        return Err(FujdError::BracketInvalid(format!("alpha_hi = {alpha_hi} does not blow up")));
    }
    let mut trials = vec![lo_t, hi_t];
    let (mut lo, mut hi) = (alpha_lo, alpha_hi);
    let mut iterations = 0;
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 2.0 * width {
            let t = blows_up(config, mid)?;
            trials.push(t);
            if t.blew_up { hi = mid } else { lo = mid }
            iterations += 1;
            continue;
        }
        let (q1, q3) = (0.5 * (lo + mid), 0.5 * (mid + hi));
        let (tm, (t1, t3)) = rayon::join(
            || blows_up(config, mid),
            || rayon::join(|| blows_up(config, q1), || blows_up(config, q3)),
        );
        let (tm, t1, t3) = (tm?, t1?, t3?);
        trials.extend([t1, tm, t3]);
        let (a, b, c) = if tm.blew_up { (lo, q1, mid) } else { (mid, q3, hi) };
        let child = if tm.blew_up { t1 } else { t3 };
        if child.blew_up { (lo, hi) = (a, b) } else { (lo, hi) = (b, c) }
        iterations += 2;
    }
    let horizon = if check_horizon {
        let mut c = config.clone();
        c.t_end = c.t_start + 2.0 * (c.t_end - c.t_start);
        let (a, b) = rayon::join(|| blows_up(&c, lo), || blows_up(&c, hi));
        Some(HorizonCheck {
            t_end: c.t_end,
            lo_still_global: !a?.blew_up,
            hi_still_blows_up: b?.blew_up,
        })
    } else {
        None
    };
    Ok(ThresholdResult { alpha_lo: lo, alpha_hi: hi, width: hi - lo, iterations, trials, horizon })
}

/// Exact threshold of the diffusion-free problem `u' = u^{7/3}`, `u(0) = alpha`, on a horizon `T`.
pub fn ode_threshold(horizon: f64) -> f64 {
    (4.0 / 3.0 * horizon).powf(-0.75)
}

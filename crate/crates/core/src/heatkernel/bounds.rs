use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::asymptotics::{envelope_value, centre_heat_value, KernelAsymptotics};
use super::convolve::{heat_convolve_with, ConvolveOptions};
use super::datum::{bracket, TailData};
use crate::bubble::DIM;
use crate::error::{FujdError, Result};
use crate::fit::linear_fit;

/// Default `epsilon` in `gamma~ = min(gamma, 3 - epsilon)`.
pub const DEFAULT_EPSILON: f64 = 1e-2;

/// Certified `K` with `Psi0 <= K D1 (t^{-gamma~/2} 1_{x <= sqrt t} + x^{-gamma~} 1_{x > sqrt t})`
/// for `t >= 1`; see `calibrate_rough_constant` and the `calibrate_envelopes` example.
pub const ROUGH_BOUND_CONSTANT: f64 = 1.25;

/// Safety factor applied on top of the sweep maximum.
const SAFETY: f64 = 1.25;

/// Centre sweep: `t = 10^{k/2}`, `k = 4..=16`.
pub fn centre_sweep_times() -> Vec<f64> {
    (4..=16).map(|k| 10f64.powf(k as f64 / 2.0)).collect()
}

/// Smallest time covered by the centre calibration.
pub const CENTRE_T_MIN: f64 = 1e2;

/// `(gamma, K)` with `|Psi0(0, t) / v(t) - C| <= K * envelope(t)` on the sweep, at n = 5.
const CENTRE_TABLE: &[(f64, f64)] = &[
    (1.6, 8.052811e-2),
    (1.8, 9.047875e-2),
    (2.0, 1.041607e-1),
    (2.5, 1.866446e-1),
    (2.7, 2.859551e-1),
    (3.0, 4.820113e-2),
];

pub fn gamma_tilde(gamma: f64, epsilon: f64) -> f64 {
    gamma.min(3.0 - epsilon)
}

/// Sweep maximum of `|Psi0(0,t)/v - C| / envelope(t)` times the safety factor.
pub fn calibrate_center_envelope(n: u32, gamma: f64, times: &[f64]) -> Result<f64> {
    let asym = KernelAsymptotics::new(n, gamma)?;
    let mut worst = 0.0f64;
    for &t in times {
        let g = centre_heat_value(n, gamma, t)? / asym.v(t) - asym.c;
        worst = worst.max(g.abs() / envelope_value(asym.order, t));
    }
    Ok(SAFETY * worst)
}

fn calibrated_cache() -> &'static Mutex<HashMap<u64, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Envelope constant for `g_{5,gamma}`: table lookup, otherwise calibrated once and cached.
pub fn center_envelope_constant(gamma: f64) -> Result<f64> {
    if gamma == 0.0 {
        return Ok(0.0);
    }
    if let Some(&(_, k)) = CENTRE_TABLE.iter().find(|(g, _)| *g == gamma) {
        return Ok(k);
    }
    let key = gamma.to_bits();
    if let Some(&k) = calibrated_cache().lock().unwrap().get(&key) {
        return Ok(k);
    }
    let k = calibrate_center_envelope(DIM, gamma, &centre_sweep_times())?;
    calibrated_cache().lock().unwrap().insert(key, k);
    Ok(k)
}

/// `[D0 v (C - |g|), D1 v (C + |g|)]` bracketing `Psi0(0, t)` in dimension five.
pub fn center_bounds(tail: &TailData, t: f64) -> Result<(f64, f64)> {
    let asym = KernelAsymptotics::new(DIM, tail.gamma)?;
    let k = center_envelope_constant(tail.gamma)?;
    let g = k * envelope_value(asym.order, t);
    if t < CENTRE_T_MIN || !(g <= 0.5 * asym.c) {
        return Err(FujdError::EnvelopeNotCertified {
            t,
            envelope: g,
            half_c: 0.5 * asym.c,
        });
    }
    let v = asym.v(t);
    Ok((tail.d0 * v * (asym.c - g), tail.d1 * v * (asym.c + g)))
}

/// Shape of the rough upper bound (without constant).
pub fn rough_envelope(gamma: f64, x: f64, t: f64, epsilon: f64) -> f64 {
    let gt = gamma_tilde(gamma, epsilon);
    if x <= t.sqrt() {
        t.powf(-gt / 2.0)
    } else {
        x.powf(-gt)
    }
}

/// Sweep maximum of `Psi0 / (D1 * rough_envelope)` over the given exponents and points.
/// `x_over_sqrt_t` are multiples of `sqrt t`.
pub fn calibrate_rough_constant(gammas: &[f64], x_over_sqrt_t: &[f64], times: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &gamma in gammas {
        let tail = TailData::power_law(1.0, gamma)?;
        for &t in times {
            for &s in x_over_sqrt_t {
                let x = s * t.sqrt();
                let psi = heat_convolve_with(&tail, x, t, DIM, ConvolveOptions::with_tol(1e-10))?;
                worst = worst.max(psi / rough_envelope(gamma, x, t, DEFAULT_EPSILON));
            }
        }
    }
    Ok(SAFETY * worst)
}

pub fn rough_bound_check(tail: &TailData, x: f64, t: f64) -> Result<bool> {
    if t < 1.0 {
        return Err(FujdError::Domain(format!("rough bound needs t >= 1, got {t}")));
    }
    let psi = heat_convolve_with(tail, x, t, DIM, ConvolveOptions::default())?;
    Ok(psi <= ROUGH_BOUND_CONSTANT * tail.d1 * rough_envelope(tail.gamma, x, t, DEFAULT_EPSILON))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailLimit {
    pub radii: Vec<f64>,
    /// `<x>^gamma Psi0(x, t0)` at each radius.
    pub weighted: Vec<f64>,
    /// Extrapolated from the last two radii assuming a `c / x^2` correction.
    pub limit: f64,
    /// Log-log slope of `|weighted - limit|` beyond `3 sqrt(t0)`; NaN when the correction is below round-off.
    pub fitted_order: f64,
}

pub fn tail_limit(tail: &TailData, t0: f64, radii: &[f64]) -> Result<TailLimit> {
    if tail.d0 != tail.d1 {
        return Err(FujdError::Domain("tail limit needs D0 = D1".into()));
    }
    let max_radius = radii.iter().copied().fold(0.0, f64::max);
    let required = 10.0 * t0.sqrt();
    if radii.len() < 2 || max_radius < required {
        return Err(FujdError::InsufficientRadius { max_radius, required });
    }
    let opts = ConvolveOptions::with_tol(1e-12);
    let weighted = radii
        .iter()
        .map(|&x| Ok(bracket(x).powf(tail.gamma) * heat_convolve_with(tail, x, t0, DIM, opts)?))
        .collect::<Result<Vec<f64>>>()?;
    let k = radii.len();
    let (x1, x2) = (radii[k - 2], radii[k - 1]);
    let (f1, f2) = (weighted[k - 2], weighted[k - 1]);
    let limit = (x2 * x2 * f2 - x1 * x1 * f1) / (x2 * x2 - x1 * x1);

    let floor = 1e-9 * limit.abs();
    let (xs, ys): (Vec<f64>, Vec<f64>) = radii
        .iter()
        .zip(&weighted)
        .filter(|(x, w)| **x >= 3.0 * t0.sqrt() && (**w - limit).abs() > floor)
        .map(|(x, w)| (x.ln(), (w - limit).abs().ln()))
        .unzip();
    let fitted_order = linear_fit(&xs, &ys).map(|f| f.slope).unwrap_or(f64::NAN);
    Ok(TailLimit {
        radii: radii.to_vec(),
        weighted,
        limit,
        fitted_order,
    })
}

#[cfg(test)]
mod tests {
    use super::super::convolve::{gradient_sup, heat_convolve};
    use super::*;

    #[test]
    fn centre_sandwich() {
        for &gamma in &[1.8, 2.0, 2.5] {
            let tail = TailData::power_law(1.0, gamma).unwrap();
            let bump = TailData::core_bump(1.0, 1.6, gamma, 3.0).unwrap();
            for &t in &[1e3, 1e5, 1e7] {
                for d in [&tail, &bump] {
                    let (lo, hi) = center_bounds(d, t).unwrap();
                    let v = heat_convolve(d, 0.0, t, 5).unwrap();
                    assert!(lo <= v && v <= hi, "gamma={gamma} t={t}: {lo} {v} {hi}");
                }
            }
        }
    }

    #[test]
    fn constant_datum_bounds_are_one() {
        let one = TailData::power_law(1.0, 0.0).unwrap();
        for &t in &[1e2, 1e4, 1e9] {
            assert_eq!(center_bounds(&one, t).unwrap(), (1.0, 1.0));
        }
    }

    #[test]
    fn sandwich_narrows() {
        let tail = TailData::power_law(1.0, 1.8).unwrap();
        let mut last = f64::INFINITY;
        for &t in &[1e3, 1e5, 1e7, 1e9] {
            let (lo, hi) = center_bounds(&tail, t).unwrap();
            let w = (hi - lo) / (0.5 * (hi + lo));
            assert!(w < last);
            last = w;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn table_matches_fresh_calibration() {
        let k = calibrate_center_envelope(5, 1.8, &centre_sweep_times()).unwrap();
        assert!((k / center_envelope_constant(1.8).unwrap() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn early_time_not_certified() {
        let tail = TailData::power_law(1.0, 1.8).unwrap();
        assert!(matches!(
            center_bounds(&tail, 10.0),
            Err(FujdError::EnvelopeNotCertified { .. })
        ));
    }

    #[test]
    fn rough_bound_examples() {
        let t = 1e4;
        assert!(rough_bound_check(&TailData::power_law(1.0, 2.5).unwrap(), 0.0, t).unwrap());
        assert!(rough_bound_check(&TailData::power_law(1.0, 1.8).unwrap(), 10.0 * t.sqrt(), t).unwrap());
        let one = TailData::power_law(1.0, 0.0).unwrap();
        for &(x, t) in &[(0.0, 1.0), (50.0, 10.0), (1e3, 1e2)] {
            assert!(rough_bound_check(&one, x, t).unwrap());
        }
        assert_eq!(gamma_tilde(4.0, DEFAULT_EPSILON), 2.99);
        assert_eq!(gamma_tilde(1.8, DEFAULT_EPSILON), 1.8);
    }

    #[test]
    fn far_field_limit() {
        let tail = TailData::power_law(1.0, 1.8).unwrap();
        let t0 = 1e3;
        let radii: Vec<f64> = (0..=6).map(|k| 10f64.powf(2.5 + k as f64 * 0.4167)).collect();
        let lim = tail_limit(&tail, t0, &radii).unwrap();
        assert!((lim.limit - 1.0).abs() < 0.01, "{lim:?}");
        assert!(lim.fitted_order <= -1.0 + 0.15, "{lim:?}");
    }

    #[test]
    fn flat_limit_is_exact() {
        let one = TailData::power_law(1.0, 0.0).unwrap();
        let lim = tail_limit(&one, 10.0, &[10.0, 100.0, 1000.0]).unwrap();
        assert!(lim.weighted.iter().all(|w| (w - 1.0).abs() < 1e-10));
        assert!((lim.limit - 1.0).abs() < 1e-9);
    }

    #[test]
    fn limit_needs_radius() {
        let tail = TailData::power_law(1.0, 1.8).unwrap();
        assert!(matches!(
            tail_limit(&tail, 1e4, &[10.0, 100.0]),
            Err(FujdError::InsufficientRadius { .. })
        ));
    }

    #[test]
    fn gradient_decay_order() {
        let tail = TailData::power_law(1.0, 1.8).unwrap();
        let ts = [1e2, 1e3, 1e4, 1e5];
        let xs: Vec<f64> = ts.iter().map(|t: &f64| t.ln()).collect();
        let ys: Vec<f64> = ts
            .iter()
            .map(|&t| gradient_sup(&tail, t, 5, 12).unwrap().ln())
            .collect();
        let fit = linear_fit(&xs, &ys).unwrap();
        assert!((fit.slope + 1.4).abs() < 0.1, "slope {}", fit.slope);
    }
}

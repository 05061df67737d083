use super::rates::RatePrediction;
use super::solve::{mu0_solve, ModulationState, PsiMode, DEFAULT_M};
use crate::bubble::{bubble_integrals, BubbleProfile, Cutoff};
use crate::error::{FujdError, Result};
use crate::heatkernel::{heat_convolve, TailData};

/// Calibrated `K` in `|H| <= K D1^4 mu_star^{3/2} v_{5,gamma~}(t) <y>^{-3}`; see the
/// `calibrate_envelopes` example.
pub const INNER_SOURCE_CONSTANT: f64 = 7.46;

/// Orthogonality condition evaluated with adaptive ball quadrature, normalised by the
/// magnitude of the `mu0 mu0_dot int Z^2` term.
pub fn orthogonality_residual(state: &ModulationState) -> Result<f64> {
    let ball = bubble_integrals(5, 4.0 * state.r)?;
    let first = state.mu0 * state.mu0_dot * ball.kernel_sq;
    let second = 7.0 / 3.0 * state.mu0.powf(1.5) * ball.mixed * state.psi0;
    Ok((first + second) / first.abs())
}

fn check_inner_radius(state: &ModulationState, y: f64) -> Result<()> {
    if !(y >= 0.0 && y <= 4.0 * state.r * (1.0 + 1e-12)) {
        return Err(FujdError::Domain(format!(
            "inner radius {y} outside [0, 4R] = [0, {}]",
            4.0 * state.r
        )));
    }
    Ok(())
}

/// `|mu mu_dot Z(y)| + (7/3) mu^{3/2} U^{4/3}(y) Psi0(0, t)`.
pub fn inner_source_magnitude(state: &ModulationState, y: f64) -> Result<f64> {
    check_inner_radius(state, y)?;
    let u = BubbleProfile::five();
    Ok((state.mu0 * state.mu0_dot * u.dilation_kernel(y)).abs()
        + 7.0 / 3.0 * state.mu0.powf(1.5) * u.potential(y) * state.psi0)
}

/// `inner_source_magnitude / (D1^4 mu_star^{3/2} v <y>^{-3})`.
pub fn inner_source_ratio(state: &ModulationState, y: f64, gamma: f64, d1: f64) -> Result<f64> {
    let env = RatePrediction::new(gamma)?.source_envelope(state.t) * (1.0 + y * y).powf(-1.5);
    Ok(inner_source_magnitude(state, y)? / (d1.powi(4) * env))
}

/// Checks the envelope with the calibrated constant; returns the used fraction of it.
pub fn inner_source_check(state: &ModulationState, y: f64, tail: &TailData) -> Result<f64> {
    let ratio = inner_source_ratio(state, y, tail.gamma, tail.d1)?;
    if ratio > INNER_SOURCE_CONSTANT {
        return Err(FujdError::InnerSourceBound {
            y,
            t: state.t,
            ratio,
            bound: INNER_SOURCE_CONSTANT,
        });
    }
    Ok(ratio / INNER_SOURCE_CONSTANT)
}

/// Sweep maximum of `inner_source_ratio` over `y in [0, 4R]` and the given times, times 1.25.
/// The ratio is amplitude free (`mu0 ~ D^2`), so a small amplitude keeps the window valid.
pub fn calibrate_inner_source(gammas: &[f64], times: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &gamma in gammas {
        let tail = TailData::power_law(0.1, gamma)?;
        for st in mu0_solve(&tail, DEFAULT_M, times, PsiMode::default())? {
            for k in 0..=40 {
                let y = (4.0 * st.r * k as f64 / 40.0).min(4.0 * st.r);
                worst = worst.max(inner_source_ratio(&st, y, gamma, tail.d1)?);
            }
        }
    }
    Ok(1.25 * worst)
}

/// Bubble part `mu^{-3/2} U(x / mu) eta(x / sqrt t)` of the leading ansatz.
pub fn ansatz_bubble(mu: f64, x: f64, t: f64) -> f64 {
    mu.powf(-1.5) * BubbleProfile::five().value(x / mu) * Cutoff.value(x / t.sqrt())
}

/// `u1(x, t)`: the cut-off bubble plus the free evolution of the tail.
pub fn leading_ansatz(state: &ModulationState, tail: &TailData, x: f64) -> Result<f64> {
    Ok(ansatz_bubble(state.mu0, x, state.t) + heat_convolve(tail, x, state.t, 5)?)
}

#[cfg(test)]
mod tests {
    use super::super::rates::ALPHA5;
    use super::super::solve::log_grid;
    use super::*;

    fn states(gamma: f64, d: f64) -> Vec<ModulationState> {
        let tail = TailData::power_law(d, gamma).unwrap();
        mu0_solve(&tail, DEFAULT_M, &log_grid(1e5, 1e9, 8), PsiMode::default()).unwrap()
    }

    #[test]
    fn orthogonality_holds_along_trajectory() {
        for &g in &[1.8, 2.0, 2.5] {
            for st in states(g, 0.5) {
                assert!(orthogonality_residual(&st).unwrap().abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn residual_is_linear_in_velocity() {
        let st = states(1.8, 1.0)[10];
        let bumped = ModulationState { mu0_dot: 1.1 * st.mu0_dot, ..st };
        let r = orthogonality_residual(&bumped).unwrap();
        assert!((r - 0.1 / 1.1).abs() < 1e-6, "{r}");
        let scaled = ModulationState { mu0_dot: 3.0 * st.mu0_dot, psi0: 3.0 * st.psi0, ..st };
        assert!(orthogonality_residual(&scaled).unwrap().abs() <= 1e-6);
    }

    #[test]
    fn inner_source_within_envelope() {
        let tail = TailData::power_law(1.0, 1.8).unwrap();
        let st = mu0_solve(&tail, DEFAULT_M, &[1e6], PsiMode::default()).unwrap()[0];
        assert!(inner_source_check(&st, 0.0, &tail).unwrap() < 0.9);
        assert!(inner_source_check(&st, 4.0 * st.r, &tail).unwrap() < 1.0);
        assert!(inner_source_magnitude(&st, 4.0 * st.r + 1.0).is_err());
    }

    #[test]
    fn inner_source_linear_in_drivers() {
        let st = states(1.8, 1.0)[5];
        let doubled = ModulationState { mu0_dot: 2.0 * st.mu0_dot, psi0: 2.0 * st.psi0, ..st };
        for &y in &[0.0, 0.7, 1.0, 3.0] {
            let a = inner_source_magnitude(&st, y).unwrap();
            let b = inner_source_magnitude(&doubled, y).unwrap();
            assert!((b / a - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn bubble_dominates_core() {
        for &g in &[1.8, 2.0, 2.5] {
            let tail = TailData::power_law(1.0, g).unwrap();
            let st = mu0_solve(&tail, DEFAULT_M, &[1e6], PsiMode::default()).unwrap()[0];
            let psi = heat_convolve(&tail, 0.0, st.t, 5).unwrap();
            let u0 = leading_ansatz(&st, &tail, 0.0).unwrap();
            let bubble = ALPHA5 * st.mu0.powf(-1.5);
            assert!((u0 - bubble - psi).abs() < 1e-12 * u0);
            assert!(bubble >= 10.0 * psi);
            let scan = (1..400).map(|k| {
                let x = 0.01 * (k as f64).powi(2);
                leading_ansatz(&st, &tail, x).unwrap()
            });
            assert!(scan.fold(0.0, f64::max) <= u0);
        }
    }

    #[test]
    fn cutoff_leaves_only_the_tail() {
        let tail = TailData::power_law(1.0, 1.8).unwrap();
        let st = mu0_solve(&tail, DEFAULT_M, &[1e6], PsiMode::default()).unwrap()[0];
        for &x in &[2000.0, 2500.0, 1e4] {
            assert_eq!(leading_ansatz(&st, &tail, x).unwrap(), heat_convolve(&tail, x, 1e6, 5).unwrap());
        }
    }
}

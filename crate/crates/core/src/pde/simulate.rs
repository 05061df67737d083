use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{InitialData, Profile, SimConfig};
use super::grid::{Field, RadialGrid};
use super::scheme::{StepControl, Stepper};
use crate::analysis::{flow_energy, sup_norm};
use crate::bubble::{BubbleProfile, Cutoff};
use crate::error::{FujdError, Result};
use crate::heatkernel::{heat_convolve, RadialDatum};
use crate::modulation::{ansatz_bubble, scale_from_supnorm, Mu0Solver, PsiMode};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimStatus {
    Running,
    Completed,
    BlewUp { t_b: f64 },
    DecayedBelow { eps: f64 },
    /// `max_steps` accepted steps before `t_end`.
    StepLimit { t: f64 },
}

impl fmt::Display for SimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimStatus::Running => write!(f, "running"),
            SimStatus::Completed => write!(f, "completed"),
            SimStatus::BlewUp { t_b } => write!(f, "blew_up({t_b:e})"),
            SimStatus::DecayedBelow { eps } => write!(f, "decayed_below({eps:e})"),
            SimStatus::StepLimit { t } => write!(f, "step_limit({t:e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub dt: f64,
    pub sup_norm: f64,
    pub r_argmax: f64,
    pub energy: f64,
    pub mu_fit: f64,
    pub status: String,
}

#[derive(Debug, Clone)]
pub struct SimReport {
    pub points: Vec<TrajectoryPoint>,
    pub status: SimStatus,
    pub final_field: Field,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    /// Accepted steps with a negative or non-finite value (positive data only).
    pub positivity_violations: usize,
    /// Accepted steps whose energy rose by more than `1e-6 |E(t_start)|`.
    pub energy_violations: usize,
    pub max_energy_increase: f64,
    /// `mu0(t_start)` for ansatz data.
    pub mu_start: Option<f64>,
    pub warnings: Vec<String>,
}

/// `mu0(t_start)` of the modulation dynamics for the configured tail.
pub fn ansatz_scale(config: &SimConfig) -> Result<f64> {
    let solver = Mu0Solver::new(config.tail()?, config.m, PsiMode::default())?;
    Ok(solver.solve(&[config.t_start])?[0].mu0)
}

fn core_scale(config: &SimConfig) -> Result<Option<f64>> {
    Ok(match config.initial {
        InitialData::Ansatz => Some(ansatz_scale(config)?),
        InitialData::ScaledProfile { profile: Profile::Bubble { .. }, .. } => Some(1.0),
        _ => None,
    })
}

/// Grid for the config, checked against the core-resolution contract.
pub fn build_grid(config: &SimConfig) -> Result<RadialGrid> {
    config.validate()?;
    let mut grid = RadialGrid::new(config.grid, config.robin(), config.max_nodes)?;
    if let Some(mu) = core_scale(config)? {
        grid.check_core(mu)?;
    }
    grid.check_far_field(config.t_end);
    Ok(grid)
}

fn tail_evolved(config: &SimConfig, grid: &RadialGrid) -> Result<Vec<f64>> {
    let tail = config.tail()?;
    grid.nodes
        .par_iter()
        .map(|&r| heat_convolve(&tail, r, config.t_start, 5))
        .collect()
}

pub fn initial_field(config: &SimConfig, grid: &RadialGrid) -> Result<Field> {
    let t = config.t_start;
    let values = match config.initial {
        InitialData::Ansatz => {
            let mu = ansatz_scale(config)?;
            let psi = tail_evolved(config, grid)?;
            grid.nodes
                .iter()
                .zip(psi)
                .map(|(&r, p)| ansatz_bubble(mu, r, t) + p)
                .collect()
        }
        InitialData::TailOnly => tail_evolved(config, grid)?,
        InitialData::ScaledProfile { alpha, profile } => {
            let u = BubbleProfile::five();
            let tail = config.tail()?;
            grid.nodes
                .iter()
                .map(|&r| {
                    alpha
                        * match profile {
                            Profile::Bubble { truncate: None } => u.value(r),
                            Profile::Bubble { truncate: Some(rho) } => u.value(r) * Cutoff.value(r / rho),
                            Profile::Gaussian { s } => (-r * r / (4.0 * s)).exp(),
                            Profile::Constant => 1.0,
                            Profile::Tail => tail.eval(r),
                        }
                })
                .collect()
        }
    };
    Ok(Field::new(t, values))
}

fn point(field: &Field, grid: &RadialGrid, nonlinear: bool, dt: f64, status: &str) -> TrajectoryPoint {
    let (sup, r_argmax) = sup_norm(field, grid);
    TrajectoryPoint {
        t: field.t,
        dt,
        sup_norm: sup,
        r_argmax,
        energy: flow_energy(field, grid, nonlinear),
        mu_fit: if sup > 0.0 { scale_from_supnorm(sup) } else { f64::INFINITY },
        status: status.to_string(),
    }
}

pub fn simulate(config: &SimConfig) -> Result<SimReport> {
    let grid = build_grid(config)?;
    let field = initial_field(config, &grid)?;
    let mut report = simulate_from(config, &grid, field)?;
    if let InitialData::Ansatz = config.initial {
        report.mu_start = Some(ansatz_scale(config)?);
    }
    Ok(report)
}

/// Time-marches `field` on `grid` from `field.t` to `config.t_end`.
pub fn simulate_from(config: &SimConfig, grid: &RadialGrid, field: Field) -> Result<SimReport> {
    config.validate()?;
    if field.values.len() != grid.len() {
        return Err(FujdError::Config(format!(
            "field has {} values, grid has {} nodes",
            field.values.len(),
            grid.len()
        )));
    }
    let (sup0, _) = sup_norm(&field, grid);
    if !(config.blowup_threshold > sup0) {
        return Err(FujdError::Config(format!(
            "blowup_threshold = {} must exceed the initial sup norm {sup0}",
            config.blowup_threshold
        )));
    }
    let positive = field.is_nonnegative();
    let check_energy = config.diffusion_on;
    let ctl = StepControl {
        tol: config.tol,
        safety: config.safety,
        dt_min: config.dt_min,
        dt_max: config.dt_max(),
    };
    let mut stepper = Stepper::new(grid, config.nonlinearity_on, config.diffusion_on);
    let nl = config.nonlinearity_on;
    let e0 = flow_energy(&field, grid, nl);
    let e_tol = 1e-6 * e0.abs();
    let mut points = vec![point(&field, grid, nl, 0.0, "running")];
    let mut report = SimReport {
        points: Vec::new(),
        status: SimStatus::Running,
        final_field: field.clone(),
        accepted_steps: 0,
        rejected_steps: 0,
        positivity_violations: 0,
        energy_violations: 0,
        max_energy_increase: f64::NEG_INFINITY,
        mu_start: None,
        warnings: grid.warnings.clone(),
    };
    let mut u = field;
    let mut e_prev = e0;
    let mut dt = config.fixed_dt.unwrap_or_else(|| config.dt0());
    let end = config.t_end;
    let mut last_dt = 0.0;
    let status = loop {
        let remaining = end - u.t;
        if remaining <= 1e-12 * end {
            break SimStatus::Completed;
        }
        if report.accepted_steps >= config.max_steps {
            break SimStatus::StepLimit { t: u.t };
        }
        let mut h = dt.min(remaining);
        let next = if config.fixed_dt.is_some() {
            let f = stepper.fixed(&u, h)?;
            if !f.is_finite() {
                break SimStatus::BlewUp { t_b: u.t };
            }
            f
        } else {
            let mut retries = 0;
            let outcome = loop {
                match stepper.doubled(&u, h, &ctl) {
                    Ok(o) => break Some(o),
                    Err(FujdError::StepRejected { suggested_dt, .. }) => {
                        report.rejected_steps += 1;
                        if h <= ctl.dt_min {
                            break None;
                        }
                        retries += 1;
                        if retries > config.max_retries {
                            return Err(FujdError::StepRejected { t: u.t, suggested_dt });
                        }
                        h = suggested_dt.max(ctl.dt_min).min(remaining);
                    }
                    Err(e) => return Err(e),
                }
            };
            let Some(o) = outcome else {
                break SimStatus::BlewUp { t_b: u.t };
            };
            dt = o.next_dt;
            o.field
        };
        last_dt = h;
        let mut next = next;
        if remaining - h <= 1e-12 * end {
            next.t = end;
        }
        u = next;
        report.accepted_steps += 1;
        if positive && !(u.is_nonnegative() && u.is_finite()) {
            report.positivity_violations += 1;
        }
        let pt = point(&u, grid, nl, h, "running");
        if check_energy {
            let rise = pt.energy - e_prev;
            report.max_energy_increase = report.max_energy_increase.max(rise);
            if rise > e_tol {
                report.energy_violations += 1;
            }
        }
        e_prev = pt.energy;
        let sup = pt.sup_norm;
        if report.accepted_steps % config.record_every == 0 {
            points.push(pt);
        }
        if !(sup <= config.blowup_threshold) {
            break SimStatus::BlewUp { t_b: u.t };
        }
        if let Some(eps) = config.decay_threshold {
            if sup < eps {
                break SimStatus::DecayedBelow { eps };
            }
        }
    };
    if points.last().map(|p| p.t) != Some(u.t) {
        points.push(point(&u, grid, nl, last_dt, "running"));
    }
    if let Some(p) = points.last_mut() {
        p.status = status.to_string();
    }
    report.points = points;
    report.status = status;
    report.final_field = u;
    Ok(report)
}

/// Thresholds for classifying a recorded trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupCriteria {
    pub blowup_threshold: f64,
    pub decay_threshold: f64,
    pub dt_min: f64,
}

/// Classifies a trajectory after the fact: blow-up if the sup norm passes the threshold or
/// the step collapses to `dt_min`, decay if it falls below `decay_threshold`.
pub fn detect_blowup(points: &[TrajectoryPoint], c: &BlowupCriteria) -> SimStatus {
    for (k, p) in points.iter().enumerate() {
        if !(p.sup_norm <= c.blowup_threshold) {
            return SimStatus::BlewUp { t_b: p.t };
        }
        if k > 0 && p.dt > 0.0 && p.dt <= c.dt_min {
            return SimStatus::BlewUp { t_b: p.t };
        }
        if p.sup_norm < c.decay_threshold {
            return SimStatus::DecayedBelow { eps: c.decay_threshold };
        }
    }
    if let Some(p) = points.last() {
        if p.status.starts_with("blew_up") {
            return SimStatus::BlewUp { t_b: p.t };
        }
    }
    SimStatus::Completed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heatkernel::GaussianDatum;
    use crate::pde::GridParams;

    fn profile_config(alpha: f64, profile: Profile, t_start: f64, t_end: f64) -> SimConfig {
        let mut c = SimConfig::new(1.8, t_start, t_end);
        c.initial = InitialData::ScaledProfile { alpha, profile };
        c
    }

    #[test]
    fn zero_data() {
        let c = profile_config(0.0, Profile::Constant, 1.0, 5.0);
        let rep = simulate(&c).unwrap();
        assert_eq!(rep.status, SimStatus::Completed);
        assert!(rep.points.iter().all(|p| p.sup_norm == 0.0));
        assert_eq!(rep.points.last().unwrap().status, "completed");
        let crit = BlowupCriteria { blowup_threshold: 1e8, decay_threshold: 1e-12, dt_min: c.dt_min };
        assert_eq!(detect_blowup(&rep.points, &crit), SimStatus::DecayedBelow { eps: 1e-12 });
    }

    #[test]
    fn ode_blowup_time() {
        for &u0 in &[1.0, 2.0] {
            let mut c = profile_config(u0, Profile::Constant, 1.0, 3.0);
            c.diffusion_on = false;
            c.tol = 1e-6;
            let rep = simulate(&c).unwrap();
            let SimStatus::BlewUp { t_b } = rep.status else { panic!("{:?}", rep.status) };
            let exact = 0.75 * u0.powf(-4.0 / 3.0);
            assert!(((t_b - 1.0) / exact - 1.0).abs() < 0.01, "u0={u0} {t_b}");
            let crit = BlowupCriteria { blowup_threshold: c.blowup_threshold, decay_threshold: 0.0, dt_min: c.dt_min };
            assert!(matches!(detect_blowup(&rep.points, &crit), SimStatus::BlewUp { .. }));
        }
    }

    #[test]
    fn heat_oracle() {
        let mut c = profile_config(1.0, Profile::Gaussian { s: 1.0 }, 1.0, 11.0);
        c.nonlinearity_on = false;
        c.tol = 5e-9;
        c.grid = GridParams { h_core: 0.02, r_switch: 10.0, q: 1.05, length: 200.0 };
        let rep = simulate(&c).unwrap();
        assert_eq!(rep.status, SimStatus::Completed);
        assert_eq!(rep.energy_violations, 0);
        assert!(rep.points.windows(2).all(|w| w[1].energy < w[0].energy));
        let g = build_grid(&c).unwrap();
        let exact = GaussianDatum { s: 1.0 };
        let peak = exact.evolved(0.0, 10.0, 5);
        let err = g
            .nodes
            .iter()
            .zip(&rep.final_field.values)
            .filter(|(r, _)| **r <= 11f64.sqrt())
            .map(|(&r, v)| (v - exact.evolved(r, 10.0, 5)).abs())
            .fold(0.0, f64::max);
        assert!(err / peak < 1e-4, "{}", err / peak);
    }

    #[test]
    fn large_bubble_blows_up_smaller_decays() {
        let c = profile_config(2.0, Profile::Bubble { truncate: Some(4.0) }, 1.0, 50.0);
        assert!(matches!(simulate(&c).unwrap().status, SimStatus::BlewUp { .. }));
        let mut c = profile_config(0.3, Profile::Bubble { truncate: Some(4.0) }, 1.0, 50.0);
        c.decay_threshold = Some(1e-2);
        let rep = simulate(&c).unwrap();
        assert_eq!(rep.status, SimStatus::DecayedBelow { eps: 1e-2 });
        assert_eq!(rep.positivity_violations, 0);
        assert_eq!(rep.energy_violations, 0);
    }

    #[test]
    fn ansatz_short_window_completes() {
        let mut c = SimConfig::new(1.8, 1e5, 1e5 + 5.0);
        c.grid = GridParams { h_core: 0.05, r_switch: 40.0, q: 1.03, length: 2e3 };
        let rep = simulate(&c).unwrap();
        assert_eq!(rep.status, SimStatus::Completed);
        let mu = rep.mu_start.unwrap();
        let p0 = &rep.points[0];
        assert!((p0.mu_fit / mu - 1.0).abs() < 1e-3, "{} {mu}", p0.mu_fit);
        assert_eq!(rep.positivity_violations, 0);
        assert_eq!(rep.energy_violations, 0);
        let crit = BlowupCriteria { blowup_threshold: c.blowup_threshold, decay_threshold: 0.0, dt_min: c.dt_min };
        assert_eq!(detect_blowup(&rep.points, &crit), SimStatus::Completed);
    }

    #[test]
    fn resolution_contract() {
        let mut c = SimConfig::new(1.8, 1e5, 1e6);
        c.grid = GridParams { h_core: 0.5, r_switch: 40.0, q: 1.05, length: 1e4 };
        assert!(matches!(build_grid(&c), Err(FujdError::InfeasibleResolution(_))));
        c.grid.h_core = 0.05;
        let g = build_grid(&c).unwrap();
        assert!(g.warnings.is_empty());
        c.grid.length = 1e3;
        assert_eq!(build_grid(&c).unwrap().warnings.len(), 1);
    }

    #[test]
    fn threshold_must_exceed_initial_sup() {
        let mut c = profile_config(5.0, Profile::Constant, 1.0, 2.0);
        c.blowup_threshold = 4.0;
        assert!(matches!(simulate(&c), Err(FujdError::Config(_))));
    }

    #[test]
    fn stationary_bubble_at_fine_resolution() {
        let mut c = profile_config(1.0, Profile::Bubble { truncate: None }, 1.0, 2.0);
        c.grid = GridParams { h_core: 0.003, r_switch: 10.0, q: 1.03, length: 1e4 };
        c.tol = 1e-6;
        let rep = simulate(&c).unwrap();
        let alpha = crate::modulation::ALPHA5;
        for p in &rep.points {
            assert!((p.sup_norm / alpha - 1.0).abs() < 0.01, "t={} sup={}", p.t, p.sup_norm);
        }
    }
}

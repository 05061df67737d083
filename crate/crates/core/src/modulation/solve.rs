use serde::{Deserialize, Serialize};

use super::ball::a_tabulated;
use crate::error::{FujdError, Result};
use crate::heatkernel::{c_constant, heat_convolve_with, v_rate, ConvolveOptions, TailData};
use crate::quadrature::{integrate, Tolerance};

/// Lower limit of the time integral: the smallest `M` for which `A(ln ln s)` is positive
/// and decreasing on `s >= M` (the peak of `A` sits at `R = 0.5512`).
pub const DEFAULT_M: f64 = 5.671;
pub const DEFAULT_SWITCH: f64 = 1e5;
pub const DEFAULT_C_TAU: f64 = 10.0;
/// Allowed relative mismatch between exact and asymptotic centre values at the switch.
pub const SWITCH_TOL: f64 = 0.01;

const TIME_TOL: f64 = 1e-11;
const CENTRE_TOL: f64 = 1e-12;

/// Source of the centre value `Psi0(0, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiMode {
    /// Quadrature of the heat convolution at every node.
    Exact,
    /// `D0 C v(s)`.
    Fast,
    /// Exact below `switch`, fast above.
    Hybrid { switch: f64 },
}

impl Default for PsiMode {
    fn default() -> Self {
        PsiMode::Hybrid { switch: DEFAULT_SWITCH }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulationState {
    pub t: f64,
    pub mu0: f64,
    pub mu0_dot: f64,
    pub tau: f64,
    /// `ln ln t`
    #[serde(rename = "R")]
    pub r: f64,
    /// Centre value `Psi0(0, t)` used for `mu0_dot`.
    pub psi0: f64,
}

pub fn cutoff_radius(t: f64) -> f64 {
    t.ln().ln()
}

pub struct Mu0Solver {
    tail: TailData,
    m: f64,
    mode: PsiMode,
    c: f64,
    pub c_tau: f64,
}

impl Mu0Solver {
    pub fn new(tail: TailData, m: f64, mode: PsiMode) -> Result<Self> {
        tail.validate_for_dynamics()?;
        if !(m > std::f64::consts::E) {
            return Err(FujdError::Domain(format!("lower limit M = {m} must exceed e")));
        }
        let a = a_tabulated(cutoff_radius(m))?;
        if !(a > 0.0) {
            return Err(FujdError::Domain(format!(
                "A(ln ln M) = {a} is not positive at M = {m}"
            )));
        }
        let solver = Self {
            tail,
            m,
            mode,
            c: c_constant(5, tail.gamma)?,
            c_tau: DEFAULT_C_TAU,
        };
        if let PsiMode::Hybrid { switch } = mode {
            if switch > m {
                let exact = solver.psi_exact(switch)?;
                let fast = solver.psi_fast(switch);
                let mismatch = (exact / fast - 1.0).abs();
                if mismatch > SWITCH_TOL {
                    return Err(FujdError::SwitchMismatch { t: switch, mismatch });
                }
            }
        }
        Ok(solver)
    }

    pub fn tail(&self) -> &TailData {
        &self.tail
    }

    pub fn lower_limit(&self) -> f64 {
        self.m
    }

    pub fn mode(&self) -> PsiMode {
        self.mode
    }

    pub fn psi_exact(&self, s: f64) -> Result<f64> {
        heat_convolve_with(&self.tail, 0.0, s, 5, ConvolveOptions::with_tol(CENTRE_TOL))
    }

    pub fn psi_fast(&self, s: f64) -> f64 {
        self.tail.asymptotic_amplitude() * self.c * v_rate(5, self.tail.gamma, s)
    }

    pub fn psi_center(&self, s: f64) -> Result<f64> {
        match self.mode {
            PsiMode::Exact => self.psi_exact(s),
            PsiMode::Fast => Ok(self.psi_fast(s)),
            PsiMode::Hybrid { switch } if s < switch => self.psi_exact(s),
            PsiMode::Hybrid { .. } => Ok(self.psi_fast(s)),
        }
    }

    fn integrand(&self, u: f64) -> f64 {
        let s = u.exp();
        match (a_tabulated(cutoff_radius(s)), self.psi_center(s)) {
            (Ok(a), Ok(p)) => a * p * s,
            _ => f64::NAN,
        }
    }

    /// `int_a^b A(R(s)) Psi0(0, s) ds`, integrated in `ln s`.
    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        let (ua, ub) = (a.ln(), b.ln());
        let tol = Tolerance::relative(TIME_TOL);
        let f = |u: f64| self.integrand(u);
        match self.mode {
            PsiMode::Hybrid { switch } if a < switch && switch < b => {
                let us = switch.ln();
                Ok(integrate(f, ua, us, tol)?.value + integrate(f, us, ub, tol)?.value)
            }
            _ => Ok(integrate(f, ua, ub, tol)?.value),
        }
    }

    fn state(&self, t: f64, big_i: f64) -> Result<ModulationState> {
        if !(big_i > 0.0) {
            return Err(FujdError::Domain(format!("time integral is not positive at t = {t}")));
        }
        let r = cutoff_radius(t);
        let mu0 = 0.25 * big_i * big_i;
        let psi0 = self.psi_center(t)?;
        let mu0_dot = a_tabulated(r)? * mu0.sqrt() * psi0;
        Ok(ModulationState { t, mu0, mu0_dot, tau: 0.0, r, psi0 })
    }

    /// States on an increasing grid inside `[9M, inf)`.
    pub fn solve(&self, t_grid: &[f64]) -> Result<Vec<ModulationState>> {
        let Some(&t0) = t_grid.first() else {
            return Ok(Vec::new());
        };
        if t0 < 9.0 * self.m * (1.0 - 1e-12) {
            return Err(FujdError::Domain(format!(
                "time grid starts at {t0}, below 9M = {}",
                9.0 * self.m
            )));
        }
        if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(FujdError::Domain("time grid must be strictly increasing".into()));
        }
        let mut big_i = self.integral(self.m, t0)?;
        let mut states = vec![self.state(t0, big_i)?];
        for w in t_grid.windows(2) {
            big_i += self.integral(w[0], w[1])?;
            states.push(self.state(w[1], big_i)?);
        }
        let traj: Vec<(f64, f64)> = states.iter().map(|s| (s.t, s.mu0)).collect();
        let tau = tau_of_t(&traj, t0, self.c_tau)?;
        for (s, tau) in states.iter_mut().zip(tau) {
            s.tau = tau;
        }
        check_window(&states)?;
        Ok(states)
    }

    /// `mu0(inf)` for `gamma > 2`, where the time integral converges. Quadrature to `1e60`
    /// plus the leading tail `A(R) D0 C s^{1 - gamma/2} / (gamma/2 - 1)` beyond it.
    pub fn mu0_limit(&self) -> Result<f64> {
        let g = self.tail.gamma;
        if !(g > 2.0) {
            return Err(FujdError::Domain(format!("mu0 diverges for gamma <= 2, got {g}")));
        }
        let t_far = 1e60f64;
        let head = self.integral(self.m, t_far)?;
        let tail = a_tabulated(cutoff_radius(t_far))? * self.psi_fast(t_far) * t_far / (0.5 * g - 1.0);
        let big_i = head + tail;
        Ok(0.25 * big_i * big_i)
    }

    /// `(mu0(inf) - mu0(t)) / mu0(t)`, the largest relative change of `mu0` after `t`.
    pub fn cauchy_tail(&self, t: f64) -> Result<f64> {
        let mu = self.state(t, self.integral(self.m, t)?)?.mu0;
        Ok((self.mu0_limit()? - mu) / mu)
    }

    /// `beta(t) = -A(R) Psi0(0,t) / int_M^t A Psi0 ds` (n = 5 prefactor is -1).
    pub fn beta(&self, t: f64) -> Result<f64> {
        let a = a_tabulated(cutoff_radius(t))?;
        Ok(-a * self.psi_center(t)? / self.integral(self.m, t)?)
    }
}

pub fn mu0_solve(tail: &TailData, m: f64, t_grid: &[f64], mode: PsiMode) -> Result<Vec<ModulationState>> {
    Mu0Solver::new(*tail, m, mode)?.solve(t_grid)
}

pub fn beta_coefficient(tail: &TailData, m: f64, t: f64, mode: PsiMode) -> Result<f64> {
    Mu0Solver::new(*tail, m, mode)?.beta(t)
}

/// `tau(t) = int_{t0}^t mu^{-2} + C_tau t0 mu^{-2}(t0)`, trapezoidal on the trajectory grid.
pub fn tau_of_t(trajectory: &[(f64, f64)], t0: f64, c_tau: f64) -> Result<Vec<f64>> {
    let Some(&(first, mu_first)) = trajectory.first() else {
        return Ok(Vec::new());
    };
    if (first - t0).abs() > 1e-12 * t0.abs() {
        return Err(FujdError::Domain(format!(
            "trajectory starts at {first}, expected t0 = {t0}"
        )));
    }
    if trajectory.iter().any(|&(_, mu)| !(mu > 0.0)) {
        return Err(FujdError::Domain("scale must stay positive".into()));
    }
    let mut tau = c_tau * t0 / (mu_first * mu_first);
    let mut out = vec![tau];
    for w in trajectory.windows(2) {
        let ((ta, ma), (tb, mb)) = (w[0], w[1]);
        tau += 0.5 * (tb - ta) * (1.0 / (ma * ma) + 1.0 / (mb * mb));
        out.push(tau);
    }
    Ok(out)
}

/// `2 mu0 R <= sqrt(t) / 9` along the trajectory.
pub fn check_window(states: &[ModulationState]) -> Result<()> {
    for s in states {
        let lhs = 2.0 * s.mu0 * s.r;
        let rhs = s.t.sqrt() / 9.0;
        if lhs > rhs {
            return Err(FujdError::WindowViolation { t: s.t, lhs, rhs });
        }
    }
    Ok(())
}

/// Largest relative gap between `mu0_dot` and a three-point derivative of `mu0` in `ln t`.
pub fn derivative_mismatch(states: &[ModulationState]) -> f64 {
    let mut worst = 0.0f64;
    for w in states.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        let (hm, hp) = (b.t.ln() - a.t.ln(), c.t.ln() - b.t.ln());
        let d = -hp / (hm * (hm + hp)) * a.mu0
            + (hp - hm) / (hm * hp) * b.mu0
            + hm / (hp * (hm + hp)) * c.mu0;
        let numeric = d / b.t;
        worst = worst.max((numeric / b.mu0_dot - 1.0).abs());
    }
    worst
}

/// `n` log-spaced times per decade from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, per_decade: usize) -> Vec<f64> {
    let decades = (b / a).log10();
    let steps = ((decades * per_decade as f64).round() as usize).max(1);
    (0..=steps)
        .map(|k| {
            if k == steps {
                b
            } else {
                a * 10f64.powf(decades * k as f64 / steps as f64)
            }
        })
        .collect()
}

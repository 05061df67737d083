use serde::{Deserialize, Serialize};

use super::grid::{GridParams, DEFAULT_MAX_NODES};
use crate::error::{FujdError, Result};
use crate::heatkernel::{TailData, TailShape, DEFAULT_EPSILON};
use crate::modulation::DEFAULT_M;

/// Shape `phi` for `alpha * phi` initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    /// `U(r) eta(r / truncate)`; untruncated when `truncate` is absent.
    Bubble {
        #[serde(default)]
        truncate: Option<f64>,
    },
    /// `exp(-r^2 / (4 s))`
    Gaussian { s: f64 },
    Constant,
    /// `psi0` of the configured tail.
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    /// Cut-off bubble at scale `mu0(t_start)` plus the heat-evolved tail.
    Ansatz,
    /// The heat-evolved tail alone.
    TailOnly,
    ScaledProfile { alpha: f64, profile: Profile },
}

fn one() -> f64 {
    1.0
}
fn default_dt_min() -> f64 {
    1e-14
}
fn default_growth_cap() -> f64 {
    1e4
}
fn default_safety() -> f64 {
    0.8
}
fn default_tol() -> f64 {
    1e-4
}
fn default_retries() -> usize {
    5
}
fn default_blowup() -> f64 {
    1e8
}
fn yes() -> bool {
    true
}
fn default_max_steps() -> usize {
    50_000_000
}
fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}
fn default_m() -> f64 {
    DEFAULT_M
}
fn default_max_nodes() -> usize {
    DEFAULT_MAX_NODES
}
fn default_initial() -> InitialData {
    InitialData::Ansatz
}
fn default_shape() -> TailShape {
    TailShape::PowerLaw
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub gamma: f64,
    #[serde(default = "one")]
    pub d0: f64,
    /// Defaults to `d0`.
    #[serde(default)]
    pub d1: Option<f64>,
    #[serde(default = "default_shape")]
    pub tail_shape: TailShape,
    pub t_start: f64,
    pub t_end: f64,
    #[serde(default)]
    pub grid: GridParams,
    /// Defaults to `0.1 h_core^2`.
    #[serde(default)]
    pub dt0: Option<f64>,
    #[serde(default = "default_dt_min")]
    pub dt_min: f64,
    /// Defaults to `0.25 h_core^2 growth_cap`.
    #[serde(default)]
    pub dt_max: Option<f64>,
    #[serde(default = "default_growth_cap")]
    pub growth_cap: f64,
    #[serde(default = "default_safety")]
    pub safety: f64,
    /// Relative local error per step.
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_retries")]
    pub max_retries: usize,
    /// Constant step without error control (refinement studies).
    #[serde(default)]
    pub fixed_dt: Option<f64>,
    #[serde(default = "default_blowup")]
    pub blowup_threshold: f64,
    /// Stop as decayed once the sup norm drops below this value.
    #[serde(default)]
    pub decay_threshold: Option<f64>,
    #[serde(default = "yes")]
    pub nonlinearity_on: bool,
    /// Test hook: turns the equation into the pointwise ODE `u' = |u|^{4/3} u`.
    #[serde(default = "yes")]
    pub diffusion_on: bool,
    #[serde(default = "default_initial")]
    pub initial: InitialData,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    /// Record every k-th accepted step (the first and last are always kept).
    #[serde(default = "record_default")]
    pub record_every: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Lower time limit of the modulation integral for ansatz data.
    #[serde(default = "default_m")]
    pub m: f64,
    #[serde(default = "default_max_nodes")]
    pub max_nodes: usize,
}

fn record_default() -> usize {
    1
}

impl SimConfig {
    /// Minimal config; every other field takes its default.
    pub fn new(gamma: f64, t_start: f64, t_end: f64) -> Self {
        Self {
            gamma,
            d0: 1.0,
            d1: None,
            tail_shape: TailShape::PowerLaw,
            t_start,
            t_end,
            grid: GridParams::default(),
            dt0: None,
            dt_min: default_dt_min(),
            dt_max: None,
            growth_cap: default_growth_cap(),
            safety: default_safety(),
            tol: default_tol(),
            max_retries: default_retries(),
            fixed_dt: None,
            blowup_threshold: default_blowup(),
            decay_threshold: None,
            nonlinearity_on: true,
            diffusion_on: true,
            initial: InitialData::Ansatz,
            max_steps: default_max_steps(),
            record_every: 1,
            epsilon: DEFAULT_EPSILON,
            m: DEFAULT_M,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_start > 0.0) || !(self.t_end > self.t_start) {
            return Err(FujdError::Config(format!(
                "need t_end > t_start > 0, got t_start = {}, t_end = {}",
                self.t_start, self.t_end
            )));
        }
        if !(self.tol > 0.0) || !(self.safety > 0.0 && self.safety <= 1.0) {
            return Err(FujdError::Config("tol must be > 0 and safety in (0, 1]".into()));
        }
        if !(self.dt_min > 0.0) || !(self.dt_max() >= self.dt_min) {
            return Err(FujdError::Config("need 0 < dt_min <= dt_max".into()));
        }
        if let Some(dt) = self.fixed_dt {
            if !(dt > 0.0) {
                return Err(FujdError::Config(format!("fixed_dt must be positive, got {dt}")));
            }
        }
        if self.record_every == 0 {
            return Err(FujdError::Config("record_every must be >= 1".into()));
        }
        Ok(())
    }

    pub fn d1(&self) -> f64 {
        self.d1.unwrap_or(self.d0)
    }

    pub fn tail(&self) -> Result<TailData> {
        TailData::new(self.d0, self.d1(), self.gamma, self.tail_shape)
    }

    pub fn dt_max(&self) -> f64 {
        self.dt_max
            .unwrap_or(0.25 * self.grid.h_core.powi(2) * self.growth_cap)
    }

    pub fn dt0(&self) -> f64 {
        self.dt0
            .unwrap_or(0.1 * self.grid.h_core.powi(2))
            .clamp(self.dt_min, self.dt_max())
    }

    /// `gamma~` used in the far-field condition.
    pub fn robin(&self) -> f64 {
        crate::heatkernel::gamma_tilde(self.gamma, self.epsilon).max(0.0)
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{FujdError, Result};

/// Grading: uniform spacing `h_core` up to `r_switch`, then geometric with ratio `q` up to `length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    pub h_core: f64,
    pub r_switch: f64,
    pub q: f64,
    pub length: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        Self {
            h_core: 0.05,
            r_switch: 10.0,
            q: 1.05,
            length: 1e3,
        }
    }
}

impl GridParams {
    /// Halves `h_core` and takes the square root of `q`, roughly doubling the node count.
    pub fn refined(&self) -> Self {
        Self {
            h_core: 0.5 * self.h_core,
            q: self.q.sqrt(),
            ..*self
        }
    }

    /// Same grading with every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            h_core: s * self.h_core,
            r_switch: s * self.r_switch,
            length: s * self.length,
            ..*self
        }
    }
}

pub const MIN_NODES: usize = 200;
pub const CORE_NODES: usize = 20;
pub const DEFAULT_MAX_NODES: usize = 2_000_000;

/// Radial mesh on `[0, L]` with the finite-volume metric of R^5.
///
/// Cell `i` spans the midpoints around node `i` (truncated at 0 and `L`);
/// `volumes[i] = (r_{i+1/2}^5 - r_{i-1/2}^5) / 5` and `face_coeff[i] = r_{i+1/2}^4 / (r_{i+1} - r_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub params: GridParams,
    pub nodes: Vec<f64>,
    pub volumes: Vec<f64>,
    pub face_coeff: Vec<f64>,
    /// `gamma~` in the far-field condition `u_r = -gamma~ u / r` at `r = L`.
    pub robin: f64,
    pub core_nodes: usize,
    pub far_nodes: usize,
    pub warnings: Vec<String>,
}

impl RadialGrid {
    pub fn new(params: GridParams, robin: f64, max_nodes: usize) -> Result<Self> {
        let GridParams { h_core, r_switch, q, length } = params;
        if !(h_core > 0.0) || !(length > h_core) || !(r_switch >= 0.0) {
            return Err(FujdError::Config(format!("invalid grid lengths: {params:?}")));
        }
        if !(q > 1.0 && q <= 1.2) {
            return Err(FujdError::Config(format!("grading ratio q = {q} outside (1, 1.2]")));
        }
        let mut nodes = vec![0.0];
        let uniform_end = r_switch.min(length);
        let n_uniform = (uniform_end / h_core).floor() as usize;
        if n_uniform > max_nodes {
            return Err(FujdError::InfeasibleResolution(format!(
                "{n_uniform} uniform nodes exceed the budget of {max_nodes}"
            )));
        }
        for k in 1..=n_uniform {
            nodes.push(k as f64 * h_core);
        }
        let core_nodes = nodes.len();
        let mut h = h_core;
        let mut r = *nodes.last().unwrap();
        while r < length {
            h *= q;
            if r + 1.5 * h >= length {
                r = length;
            } else {
                r += h;
            }
            nodes.push(r);
            if nodes.len() > max_nodes {
                return Err(FujdError::InfeasibleResolution(format!(
                    "grid needs more than {max_nodes} nodes"
                )));
            }
        }
        if nodes.len() < MIN_NODES {
            return Err(FujdError::InfeasibleResolution(format!(
                "{} nodes, at least {MIN_NODES} required",
                nodes.len()
            )));
        }
        let n = nodes.len();
        let faces: Vec<f64> = nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let face_coeff: Vec<f64> = nodes
            .windows(2)
            .zip(&faces)
            .map(|(w, f)| f.powi(4) / (w[1] - w[0]))
            .collect();
        let volumes: Vec<f64> = (0..n)
            .map(|i| {
                let hi = if i + 1 < n { faces[i] } else { nodes[n - 1] };
                let lo = if i > 0 { faces[i - 1] } else { 0.0 };
                (hi.powi(5) - lo.powi(5)) / 5.0
            })
            .collect();
        Ok(Self {
            params,
            nodes,
            volumes,
            face_coeff,
            robin,
            core_nodes,
            far_nodes: n - core_nodes,
            warnings: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn length(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn nodes_within(&self, radius: f64) -> usize {
        self.nodes.iter().take_while(|&&r| r <= radius).count()
    }

    /// Errors unless at least `CORE_NODES` nodes lie in `r <= mu`.
    pub fn check_core(&self, mu: f64) -> Result<()> {
        let k = self.nodes_within(mu);
        if k < CORE_NODES {
            return Err(FujdError::InfeasibleResolution(format!(
                "{k} nodes inside the core r <= {mu}, need {CORE_NODES} (h_core = {})",
                self.params.h_core
            )));
        }
        Ok(())
    }

    /// Records a warning when the far boundary sits inside the self-similar zone `|x| < 2 sqrt(t_end)`.
    pub fn check_far_field(&mut self, t_end: f64) {
        let need = 2.0 * t_end.sqrt();
        if self.length() < need {
            self.warnings.push(format!(
                "far-field boundary L = {} inside the self-similar zone 2 sqrt(t_end) = {need:.4}",
                self.length()
            ));
        }
    }
}

/// A sampled radial function with its time stamp.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub t: f64,
    pub values: Vec<f64>,
}

impl Field {
    pub fn new(t: f64, values: Vec<f64>) -> Self {
        Self { t, values }
    }

    pub fn sample(grid: &RadialGrid, t: f64, f: impl Fn(f64) -> f64) -> Self {
        Self::new(t, grid.nodes.iter().map(|&r| f(r)).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }
}

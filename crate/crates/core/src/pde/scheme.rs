use super::grid::{Field, RadialGrid};
use crate::error::{FujdError, Result};

/// `|u|^{4/3} u`
#[inline]
pub fn reaction(u: f64) -> f64 {
    u.abs().powf(4.0 / 3.0) * u
}

/// Finite-volume radial Laplacian in R^5 with the Robin far-field flux `L^4 u_r = -gamma~ L^3 u_N`.
/// At the origin this is `10 (u_1 - u_0) / h^2`, the symmetric limit `5 u''(0)`.
pub fn laplacian_values(u: &[f64], grid: &RadialGrid) -> Vec<f64> {
    let n = grid.len();
    let a = &grid.face_coeff;
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut flux = 0.0;
        if i + 1 < n {
            flux += a[i] * (u[i + 1] - u[i]);
        } else {
            flux -= grid.robin * grid.length().powi(3) * u[i];
        }
        if i > 0 {
            flux -= a[i - 1] * (u[i] - u[i - 1]);
        }
        out[i] = flux / grid.volumes[i];
    }
    out
}

pub fn laplacian(field: &Field, grid: &RadialGrid) -> Field {
    Field::new(field.t, laplacian_values(&field.values, grid))
}

/// One linearly implicit Euler step `(I - dt Lap) u+ = u + dt |u|^{4/3} u`.
///
/// The matrix is an M-matrix, so positive data stay positive for every `dt`; treating the convex
/// Dirichlet part implicitly and the concave potential explicitly also makes the discrete energy
/// non-increasing.
pub struct Stepper {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    cp: Vec<f64>,
    dp: Vec<f64>,
    pub nonlinear: bool,
    pub diffusion: bool,
}

impl Stepper {
    pub fn new(grid: &RadialGrid, nonlinear: bool, diffusion: bool) -> Self {
        let n = grid.len();
        let mut lower = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 0..n {
            let v = grid.volumes[i];
            if i > 0 {
                lower[i] = grid.face_coeff[i - 1] / v;
            }
            if i + 1 < n {
                upper[i] = grid.face_coeff[i] / v;
            }
            diag[i] = lower[i] + upper[i];
        }
        diag[n - 1] += grid.robin * grid.length().powi(3) / grid.volumes[n - 1];
        Self {
            lower,
            diag,
            upper,
            cp: vec![0.0; n],
            dp: vec![0.0; n],
            nonlinear,
            diffusion,
        }
    }

    pub fn euler(&mut self, u: &[f64], dt: f64, out: &mut [f64]) -> Result<()> {
        let n = u.len();
        for i in 0..n {
            out[i] = if self.nonlinear { u[i] + dt * reaction(u[i]) } else { u[i] };
        }
        if !self.diffusion {
            return Ok(());
        }
        // Thomas algorithm on (I - dt Lap)
        let mut b = 1.0 + dt * self.diag[0];
        if !(b > 0.0) || !b.is_finite() {
            return Err(FujdError::SolverSingular { row: 0 });
        }
        self.cp[0] = -dt * self.upper[0] / b;
        self.dp[0] = out[0] / b;
        for i in 1..n {
            b = 1.0 + dt * self.diag[i] + dt * self.lower[i] * self.cp[i - 1];
            if !(b > 0.0) || !b.is_finite() {
                return Err(FujdError::SolverSingular { row: i });
            }
            self.cp[i] = -dt * self.upper[i] / b;
            self.dp[i] = (out[i] + dt * self.lower[i] * self.dp[i - 1]) / b;
        }
        out[n - 1] = self.dp[n - 1];
        for i in (0..n - 1).rev() {
            out[i] = self.dp[i] - self.cp[i] * out[i + 1];
        }
        Ok(())
    }
}

/// Local error control by step doubling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub tol: f64,
    pub safety: f64,
    pub dt_min: f64,
    pub dt_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub field: Field,
    pub dt: f64,
    pub error: f64,
    pub next_dt: f64,
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

impl Stepper {
    /// Full step against two half steps; the half-step result is kept when the relative
    /// sup-norm difference is within `tol`.
    pub fn doubled(&mut self, field: &Field, dt: f64, ctl: &StepControl) -> Result<StepOutcome> {
        let n = field.values.len();
        let mut coarse = vec![0.0; n];
        let mut half = vec![0.0; n];
        let mut fine = vec![0.0; n];
        self.euler(&field.values, dt, &mut coarse)?;
        self.euler(&field.values, 0.5 * dt, &mut half)?;
        self.euler(&half, 0.5 * dt, &mut fine)?;
        let scale = sup(&fine).max(f64::MIN_POSITIVE);
        let diff = fine
            .iter()
            .zip(&coarse)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let error = if diff.is_finite() { diff / scale } else { f64::INFINITY };
        let factor = if error > 0.0 {
            (ctl.safety * (ctl.tol / error).sqrt()).clamp(0.2, 2.0)
        } else {
            2.0
        };
        let next_dt = (dt * factor).min(ctl.dt_max);
        let admissible = error <= ctl.tol && fine.iter().all(|v| v.is_finite());
        if !admissible {
            return Err(FujdError::StepRejected {
                t: field.t,
                suggested_dt: next_dt,
            });
        }
        Ok(StepOutcome {
            field: Field::new(field.t + dt, fine),
            dt,
            error,
            next_dt: next_dt.max(ctl.dt_min),
        })
    }

    pub fn fixed(&mut self, field: &Field, dt: f64) -> Result<Field> {
        let mut out = vec![0.0; field.values.len()];
        self.euler(&field.values, dt, &mut out)?;
        Ok(Field::new(field.t + dt, out))
    }
}

use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::gamma as gamma_fn;

use super::convolve::{heat_convolve_with, ConvolveOptions};
use super::datum::TailData;
use crate::bubble::sphere_area;
use crate::error::{FujdError, Result};
use crate::fit::linear_fit;
use crate::quadrature::{default_rel_tol, integrate, integrate_to_infinity, Tolerance};

/// Quadrature tolerance for the centre value; the error orders need ~1e-12 to resolve `t^{-1}` at `t = 1e6`.
pub const CENTRE_TOL: f64 = 1e-13;

/// Logarithmic modifier of the error envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogFactor {
    None,
    /// times `<ln t> = sqrt(1 + ln^2 t)`
    Bracket,
    /// times `1 / ln(1 + t)`
    InverseLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeOrder {
    pub power: f64,
    pub log: LogFactor,
}

impl EnvelopeOrder {
    pub fn has_log_factor(&self) -> bool {
        self.log != LogFactor::None
    }

    pub fn log_multiplier(&self, t: f64) -> f64 {
        match self.log {
            LogFactor::None => 1.0,
            LogFactor::Bracket => (1.0 + t.ln().powi(2)).sqrt(),
            LogFactor::InverseLog => 1.0 / t.ln_1p(),
        }
    }
}

/// Shape `t^power * log` of the error envelope, without constant.
pub fn envelope_value(order: EnvelopeOrder, t: f64) -> f64 {
    t.powf(order.power) * order.log_multiplier(t)
}

/// Decay order of the correction `g_{n,gamma}(t)` in each of the seven regimes.
pub fn g_envelope_exponent(n: u32, gamma: f64) -> EnvelopeOrder {
    let nf = n as f64;
    let (power, log) = if gamma < nf - 2.0 {
        (-1.0, LogFactor::None)
    } else if gamma == nf - 2.0 {
        (-1.0, LogFactor::Bracket)
    } else if gamma < nf {
        ((gamma - nf) / 2.0, LogFactor::None)
    } else if gamma == nf {
        (0.0, LogFactor::InverseLog)
    } else if gamma < nf + 2.0 {
        ((nf - gamma) / 2.0, LogFactor::None)
    } else if gamma == nf + 2.0 {
        (-1.0, LogFactor::Bracket)
    } else {
        (-1.0, LogFactor::None)
    };
    EnvelopeOrder { power, log }
}

pub fn v_rate(n: u32, gamma: f64, t: f64) -> f64 {
    let nf = n as f64;
    if gamma < nf {
        t.powf(-gamma / 2.0)
    } else if gamma == nf {
        t.powf(-nf / 2.0) * t.ln_1p()
    } else {
        t.powf(-nf / 2.0)
    }
}

fn check_dim(n: u32) -> Result<()> {
    if n == 0 {
        return Err(FujdError::Domain("dimension must be positive".into()));
    }
    Ok(())
}

/// Leading constant `C_{n,gamma}`.
pub fn c_constant(n: u32, gamma: f64) -> Result<f64> {
    check_dim(n)?;
    let nf = n as f64;
    if gamma < nf {
        Ok(2f64.powf(-gamma) * gamma_fn((nf - gamma) / 2.0) / gamma_fn(nf / 2.0))
    } else if gamma == nf {
        Ok(heat_norm(n) * 0.5 * sphere_area(n))
    } else {
        c_constant_quadrature(n, gamma)
    }
}

fn heat_norm(n: u32) -> f64 {
    (4.0 * std::f64::consts::PI).powf(-(n as f64) / 2.0)
}

/// `C_{n,gamma}` from radial quadrature of its defining integral.
///
/// For `gamma < n` this is the Gaussian moment (substituting `r = u^2` to tame the origin);
/// for `gamma > n` the integral of `<y>^{-gamma}`. At `gamma = n` there is no integral and
/// the boundary value is returned.
pub fn c_constant_quadrature(n: u32, gamma: f64) -> Result<f64> {
    check_dim(n)?;
    let nf = n as f64;
    let tol = Tolerance::relative(1e-12);
    let radial = if gamma < nf {
        let p = 2.0 * nf - 1.0 - 2.0 * gamma;
        let f = |u: f64| {
            let r = u * u;
            2.0 * u.powf(p) * (-r * r / 4.0).exp()
        };
        integrate(f, 0.0, 80f64.sqrt(), tol)?.value
    } else if gamma == nf {
        return c_constant(n, gamma);
    } else {
        let f = |r: f64| r.powf(nf - 1.0) * (1.0 + r * r).powf(-gamma / 2.0);
        integrate_to_infinity(f, 0.0, &[1.0, 10.0], tol)?.value
    };
    Ok(heat_norm(n) * sphere_area(n) * radial)
}

/// `Psi0(0, t)` for `psi0 = <r>^{-gamma}`.
pub fn centre_heat_value(n: u32, gamma: f64, t: f64) -> Result<f64> {
    let tail = TailData::power_law(1.0, gamma)?;
    heat_convolve_with(&tail, 0.0, t, n, ConvolveOptions::with_tol(default_rel_tol(CENTRE_TOL)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelAsymptotics {
    pub n: u32,
    pub gamma: f64,
    pub c: f64,
    pub order: EnvelopeOrder,
}

impl KernelAsymptotics {
    pub fn new(n: u32, gamma: f64) -> Result<Self> {
        Ok(Self {
            n,
            gamma,
            c: c_constant(n, gamma)?,
            order: g_envelope_exponent(n, gamma),
        })
    }

    pub fn v(&self, t: f64) -> f64 {
        v_rate(self.n, self.gamma, t)
    }

    /// `v(t) C`: the leading-order centre value.
    pub fn leading(&self, t: f64) -> f64 {
        self.v(t) * self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelCheckRow {
    pub n: u32,
    pub gamma: f64,
    pub t: f64,
    pub lhs: f64,
    pub v: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub rel_err: f64,
    pub predicted_order: f64,
}

/// One row per `(gamma, t)`, gammas evaluated in parallel.
pub fn kernel_check(n: u32, gammas: &[f64], times: &[f64]) -> Result<Vec<KernelCheckRow>> {
    let per_gamma: Vec<Result<Vec<KernelCheckRow>>> = gammas
        .par_iter()
        .map(|&gamma| {
            let asym = KernelAsymptotics::new(n, gamma)?;
            times
                .iter()
                .map(|&t| {
                    let lhs = centre_heat_value(n, gamma, t)?;
                    let v = asym.v(t);
                    Ok(KernelCheckRow {
                        n,
                        gamma,
                        t,
                        lhs,
                        v,
                        c: asym.c,
                        rel_err: (lhs / (v * asym.c) - 1.0).abs(),
                        predicted_order: asym.order.power,
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_gamma {
        rows.extend(r?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeCheck {
    pub gamma: f64,
    pub predicted: f64,
    pub fitted: f64,
    pub log_factor: LogFactor,
    /// Relative error at round-off everywhere (e.g. `gamma = 0`); no slope is fitted.
    pub exact: bool,
    pub pass: bool,
}

pub const SLOPE_TOL: f64 = 0.15;

/// Fit `ln(rel_err / log_multiplier)` against `ln t` for the rows of a single gamma.
pub fn kernel_check_slope(rows: &[KernelCheckRow]) -> Result<SlopeCheck> {
    let first = rows
        .first()
        .ok_or(FujdError::InsufficientPoints { found: 0, needed: 2 })?;
    let order = g_envelope_exponent(first.n, first.gamma);
    if rows.iter().all(|r| r.rel_err < 1e-12) {
        return Ok(SlopeCheck {
            gamma: first.gamma,
            predicted: order.power,
            fitted: f64::NAN,
            log_factor: order.log,
            exact: true,
            pass: true,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.t.ln()).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| (r.rel_err / order.log_multiplier(r.t)).ln())
        .collect();
    let fit = linear_fit(&xs, &ys)?;
    Ok(SlopeCheck {
        gamma: first.gamma,
        predicted: order.power,
        fitted: fit.slope,
        log_factor: order.log,
        exact: false,
        pass: (fit.slope - order.power).abs() <= SLOPE_TOL,
    })
}

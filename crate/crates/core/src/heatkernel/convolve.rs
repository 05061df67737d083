use std::sync::OnceLock;

use super::datum::RadialDatum;
use crate::bubble::sphere_area;
use crate::error::{FujdError, Result};
use crate::quadrature::{default_rel_tol, gauss_legendre, integrate_points, Tolerance};

/// Default relative tolerance of the convolution quadrature.
pub const HEAT_TOL: f64 = 1e-8;

/// How the polar-angle integral is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularRule {
    /// Closed form for n = 3 and n = 5; falls back to 64-point Gauss–Legendre otherwise.
    Exact,
    /// Gauss–Legendre in `cos(theta)` with the given number of nodes.
    GaussLegendre(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolveOptions {
    pub rel_tol: f64,
    pub angular: AngularRule,
}

impl Default for ConvolveOptions {
    fn default() -> Self {
        Self {
            rel_tol: default_rel_tol(HEAT_TOL),
            angular: AngularRule::Exact,
        }
    }
}

impl ConvolveOptions {
    pub fn with_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

/// `int_0^pi exp(-a (1 - cos theta)) sin^{n-2}(theta) d theta` in closed form.
fn angular_exact(n: u32, a: f64) -> Option<f64> {
    match n {
        3 => Some(if a < 0.5 {
            // e^{-a} 2 sinh(a) / a
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..20 {
                term *= a * a / ((2 * k) as f64 * (2 * k + 1) as f64);
                sum += term;
            }
            2.0 * (-a).exp() * sum
        } else {
            -(-2.0 * a).exp_m1() / a
        }),
        5 => Some(if a < 2.0 {
            // e^{-a} sum_k a^{2k} / (2k)! * 4 / ((2k+1)(2k+3))
            let mut pow = 1.0;
            let mut sum = 0.0;
            for k in 0..24 {
                if k > 0 {
                    pow *= a * a / ((2 * k - 1) as f64 * (2 * k) as f64);
                }
                sum += pow * 4.0 / ((2 * k + 1) as f64 * (2 * k + 3) as f64);
            }
            (-a).exp() * sum
        } else {
            let e = (-2.0 * a).exp();
            2.0 * (a * (1.0 + e) - (1.0 - e)) / (a * a * a)
        }),
        _ => None,
    }
}

fn default_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(64))
}

fn angular_legendre(n: u32, a: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let m = (n as f64 - 3.0) / 2.0;
    nodes
        .iter()
        .zip(weights)
        .map(|(&u, &w)| w * (-a * (1.0 - u)).exp() * (1.0 - u * u).powf(m))
        .sum()
}

/// `Psi(x, t)` for radial datum `psi` in dimension `n`, default options.
pub fn heat_convolve<D: RadialDatum + ?Sized>(datum: &D, x: f64, t: f64, n: u32) -> Result<f64> {
    heat_convolve_with(datum, x, t, n, ConvolveOptions::default())
}

pub fn heat_convolve_with<D: RadialDatum + ?Sized>(
    datum: &D,
    x: f64,
    t: f64,
    n: u32,
    opts: ConvolveOptions,
) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(FujdError::Domain(format!("time must be > 0, got {t}")));
    }
    if !(x >= 0.0) || n < 2 {
        return Err(FujdError::Domain(format!(
            "need x >= 0 and n >= 2, got x = {x}, n = {n}"
        )));
    }
    let sqrt_t = t.sqrt();
    let width = 16.0 * sqrt_t;
    let lo = (x - width).max(0.0);
    let hi = x + width;
    let mut pts = vec![lo, hi];
    let mut candidates = datum.scales();
    candidates.extend_from_slice(&[
        x,
        x - sqrt_t,
        x + sqrt_t,
        x - 3.0 * sqrt_t,
        x + 3.0 * sqrt_t,
        x + 8.0 * sqrt_t,
        0.25 * sqrt_t,
    ]);
    for c in candidates {
        if c > lo && c < hi {
            pts.push(c);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let m = (n - 1) as i32;
    let inv4t = 0.25 / t;
    let origin = x == 0.0;
    let (legendre, custom);
    let rule: Option<(&[f64], &[f64])> = match opts.angular {
        AngularRule::Exact if origin || angular_exact(n, 1.0).is_some() => None,
        AngularRule::Exact => {
            legendre = default_legendre();
            Some((&legendre.0, &legendre.1))
        }
        AngularRule::GaussLegendre(k) => {
            custom = gauss_legendre(k.max(2));
            Some((&custom.0, &custom.1))
        }
    };
    let prefactor = (4.0 * std::f64::consts::PI * t).powf(-(n as f64) / 2.0);
    let (surface, angular_norm) = if origin {
        (sphere_area(n), 1.0)
    } else {
        (sphere_area(n - 1), 0.0)
    };

    let integrand = |rho: f64| -> f64 {
        let d = x - rho;
        let gauss = (-(d * d) * inv4t).exp();
        if gauss == 0.0 {
            return 0.0;
        }
        let ang = if origin {
            angular_norm
        } else {
            let a = x * rho * 2.0 * inv4t;
            match rule {
                None => angular_exact(n, a).expect("exact rule available"),
                Some((nodes, weights)) => angular_legendre(n, a, nodes, weights),
            }
        };
        rho.powi(m) * datum.eval(rho) * gauss * ang
    };
    let res = integrate_points(integrand, &pts, Tolerance::relative(opts.rel_tol))?;
    Ok(prefactor * surface * res.value)
}

/// Largest central-difference gradient `|d Psi / dx|` over `x = k * sqrt(t) / 4`, `k = 1..=samples`.
pub fn gradient_sup<D: RadialDatum + ?Sized>(datum: &D, t: f64, n: u32, samples: usize) -> Result<f64> {
    let opts = ConvolveOptions::with_tol(1e-12);
    let s = t.sqrt();
    let h = 0.02 * s;
    let mut best = 0.0f64;
    for k in 1..=samples {
        let x = 0.25 * s * k as f64;
        let fp = heat_convolve_with(datum, x + h, t, n, opts)?;
        let fm = heat_convolve_with(datum, x - h, t, n, opts)?;
        best = best.max(((fp - fm) / (2.0 * h)).abs());
    }
    Ok(best)
}

//! Aubin–Talenti steady state, its dilation kernel, the smooth cutoff and
//! the radial integrals that drive the modulation law.
//!
//! For dimension `n` the profile is `U(r) = alpha_n (1 + r^2)^{-(n-2)/2}` with
//! `alpha_n = [n(n-2)]^{(n-2)/4}`. The dilation kernel is
//! `Z(r) = (n-2)/2 U(r) + r U'(r) = (n-2)/2 alpha_n (1 - r^2)(1 + r^2)^{-n/2}`.

use statrs::function::gamma::gamma;

use crate::error::{FujdError, Result};
use crate::quadrature::{default_rel_tol, integrate_points, integrate_to_infinity, Tolerance};

/// Spatial dimension used throughout the dynamics.
pub const DIM: u32 = 5;

/// Surface area of the unit sphere `S^{n-1}`.
pub fn sphere_area(n: u32) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / gamma(h)
}

/// The Aubin–Talenti bubble in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BubbleProfile {
    n: u32,
    alpha: f64,
}

impl BubbleProfile {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(FujdError::Domain(format!("dimension must be >= 3, got {n}")));
        }
        let nf = n as f64;
        Ok(Self {
            n,
            alpha: (nf * (nf - 2.0)).powf((nf - 2.0) / 4.0),
        })
    }

    /// The five-dimensional bubble, `alpha_5 = 15^{3/4}`.
    pub fn five() -> Self {
        Self::new(DIM).expect("n = 5 is valid")
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Critical exponent `(n+2)/(n-2)`.
    pub fn critical_power(&self) -> f64 {
        let n = self.n as f64;
        (n + 2.0) / (n - 2.0)
    }

    pub fn value(&self, r: f64) -> f64 {
        let n = self.n as f64;
        self.alpha * (1.0 + r * r).powf(-(n - 2.0) / 2.0)
    }

    /// Radial derivative `U'(r)`.
    pub fn gradient(&self, r: f64) -> f64 {
        let n = self.n as f64;
        -(n - 2.0) * self.alpha * r * (1.0 + r * r).powf(-n / 2.0)
    }

    /// Second radial derivative `U''(r)`.
    pub fn second_derivative(&self, r: f64) -> f64 {
        let n = self.n as f64;
        let s = 1.0 + r * r;
        -(n - 2.0) * self.alpha * s.powf(-n / 2.0 - 1.0) * (1.0 - (n - 1.0) * r * r)
    }

    /// Dilation kernel `Z_{n+1}(r)`.
    pub fn dilation_kernel(&self, r: f64) -> f64 {
        let n = self.n as f64;
        let r2 = r * r;
        0.5 * (n - 2.0) * self.alpha * (1.0 - r2) * (1.0 + r2).powf(-n / 2.0)
    }

    /// `U^{4/(n-2)}(r)`, the potential of the linearized operator (up to the factor `p`).
    pub fn potential(&self, r: f64) -> f64 {
        let n = self.n as f64;
        self.value(r).powf(4.0 / (n - 2.0))
    }
}

fn checked(r: f64, n: u32) -> Result<BubbleProfile> {
    if !(r >= 0.0) {
        return Err(FujdError::Domain(format!("radius must be >= 0, got {r}")));
    }
    BubbleProfile::new(n)
}

/// `U(r)` in dimension `n`.
pub fn profile(r: f64, n: u32) -> Result<f64> {
    Ok(checked(r, n)?.value(r))
}

/// `U'(r)` in dimension `n`.
pub fn profile_gradient(r: f64, n: u32) -> Result<f64> {
    Ok(checked(r, n)?.gradient(r))
}

/// `Z_{n+1}(r)` in dimension `n`.
pub fn kernel_dilation(r: f64, n: u32) -> Result<f64> {
    Ok(checked(r, n)?.dilation_kernel(r))
}

/// Quintic smoothstep used on `(1, 2)`.
fn smoothstep(x: f64) -> (f64, f64, f64) {
    let x2 = x * x;
    let p = x2 * x * (10.0 - 15.0 * x + 6.0 * x2);
    let dp = 30.0 * x2 * (1.0 - x) * (1.0 - x);
    let ddp = 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    (p, dp, ddp)
}

/// Smooth cutoff: 1 on `[0, 1]`, 0 on `[2, inf)`, C^2 in between.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Cutoff;

impl Cutoff {
    pub fn value(&self, s: f64) -> f64 {
        if s <= 1.0 {
            1.0
        } else if s >= 2.0 {
            0.0
        } else {
            1.0 - smoothstep(s - 1.0).0
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        if s <= 1.0 || s >= 2.0 {
            0.0
        } else {
            -smoothstep(s - 1.0).1
        }
    }

    pub fn second_derivative(&self, s: f64) -> f64 {
        if s <= 1.0 || s >= 2.0 {
            0.0
        } else {
            -smoothstep(s - 1.0).2
        }
    }
}

/// Integrals over the ball `B_rho` (with the `|S^{n-1}| r^{n-1}` measure).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BubbleIntegrals {
    /// `int U^{(n+2)/(n-2)}`
    pub power: f64,
    /// `int Z_{n+1}^2`
    pub kernel_sq: f64,
    /// `int U^{4/(n-2)} Z_{n+1}`
    pub mixed: f64,
    /// Largest relative error estimate of the three integrals.
    pub rel_error: f64,
}

impl BubbleIntegrals {
    /// `int U^{4/(n-2)} Z / int U^{(n+2)/(n-2)}`; equals `-(n-2)^2 / (2(n+2))` on all of R^n.
    pub fn mixed_ratio(&self) -> f64 {
        self.mixed / self.power
    }
}

const BUBBLE_TOL: f64 = 1e-9;

/// Radial integrals of the bubble over `B_rho`; `rho = f64::INFINITY` integrates over R^n.
pub fn bubble_integrals(n: u32, radius_cap: f64) -> Result<BubbleIntegrals> {
    bubble_integrals_with_tol(n, radius_cap, default_rel_tol(BUBBLE_TOL))
}

pub fn bubble_integrals_with_tol(n: u32, radius_cap: f64, rel_tol: f64) -> Result<BubbleIntegrals> {
    let u = BubbleProfile::new(n)?;
    if !(radius_cap >= 0.0) {
        return Err(FujdError::Domain(format!("radius cap must be >= 0, got {radius_cap}")));
    }
    if radius_cap.is_infinite() && n < 5 {
        return Err(FujdError::Domain(format!(
            "Z_(n+1) is not square integrable on R^{n}"
        )));
    }
    if radius_cap == 0.0 {
        return Ok(BubbleIntegrals {
            power: 0.0,
            kernel_sq: 0.0,
            mixed: 0.0,
            rel_error: 0.0,
        });
    }
    let area = sphere_area(n);
    let m = (n - 1) as i32;
    let p = u.critical_power();
    let tol = Tolerance::relative(rel_tol);
    let run = |f: &dyn Fn(f64) -> f64| -> Result<(f64, f64)> {
        let g = |r: f64| f(r) * r.powi(m);
        let res = if radius_cap.is_infinite() {
            integrate_to_infinity(g, 0.0, &[1.0, 4.0, 20.0], tol)?
        } else {
            let mut pts = vec![0.0];
            for b in [1.0, 4.0, 20.0, 100.0] {
                if b < radius_cap {
                    pts.push(b);
                }
            }
            pts.push(radius_cap);
            integrate_points(g, &pts, tol)?
        };
        let rel = if res.value != 0.0 { res.error / res.value.abs() } else { res.error };
        Ok((area * res.value, rel))
    };
    let (power, e1) = run(&|r| u.value(r).powf(p))?;
    let (kernel_sq, e2) = run(&|r| u.dilation_kernel(r).powi(2))?;
    let (mixed, e3) = run(&|r| u.potential(r) * u.dilation_kernel(r))?;
    Ok(BubbleIntegrals {
        power,
        kernel_sq,
        mixed,
        rel_error: e1.max(e2).max(e3),
    })
}

/// `A(R) = -((n+2)/(n-2)) int_{B_{4R}} U^{4/(n-2)} Z / int_{B_{4R}} Z^2`.
pub fn a_of_r(radius: f64, n: u32) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(FujdError::Domain(format!("cutoff radius must be > 0, got {radius}")));
    }
    let rho = if radius.is_infinite() { f64::INFINITY } else { 4.0 * radius };
    let ints = bubble_integrals(n, rho)?;
    let nf = n as f64;
    Ok(-(nf + 2.0) / (nf - 2.0) * ints.mixed / ints.kernel_sq)
}

/// `A(inf) = ((n-2)/2) int U^{(n+2)/(n-2)} / int Z^2` over R^n.
pub fn a_limit(n: u32) -> Result<f64> {
    let ints = bubble_integrals(n, f64::INFINITY)?;
    let nf = n as f64;
    Ok(0.5 * (nf - 2.0) * ints.power / ints.kernel_sq)
}

use serde::Serialize;

use crate::error::{FujdError, Result};
use crate::heatkernel::{gamma_tilde, v_rate, DEFAULT_EPSILON};

/// `15^{3/4}`, the bubble height.
pub const ALPHA5: f64 = 7.621_991_222_319_221;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

impl Regime {
    pub fn of(gamma: f64) -> Result<Self> {
        if !(gamma > 1.5) {
            return Err(FujdError::Domain(format!("rates need gamma > 3/2, got {gamma}")));
        }
        Ok(if gamma < 2.0 {
            Regime::Subcritical
        } else if gamma == 2.0 {
            Regime::Critical
        } else {
            Regime::Supercritical
        })
    }
}

/// Scale envelope: `t^{2-gamma}`, `(ln t)^2` or `1`.
pub fn mu_star(gamma: f64, t: f64) -> f64 {
    if gamma < 2.0 {
        t.powf(2.0 - gamma)
    } else if gamma == 2.0 {
        t.ln().powi(2)
    } else {
        1.0
    }
}

/// Conjectured sup-norm law, five-dimensional row.
pub fn fk_rate(gamma: f64, t: f64) -> f64 {
    if gamma < 2.0 {
        t.powf(-1.5 * (2.0 - gamma))
    } else if gamma == 2.0 {
        t.ln().powi(-3)
    } else {
        1.0
    }
}

/// `15^{3/4} mu^{-3/2}`.
pub fn supnorm_from_scale(mu: f64) -> f64 {
    ALPHA5 * mu.powf(-1.5)
}

/// Inverse of `supnorm_from_scale`.
pub fn scale_from_supnorm(sup: f64) -> f64 {
    (ALPHA5 / sup).powf(2.0 / 3.0)
}

/// Rate of the inner source in the rescaled time.
pub fn vtilde(gamma: f64, tau: f64) -> Result<f64> {
    match Regime::of(gamma)? {
        Regime::Subcritical => Ok(1.0 / tau),
        Regime::Critical => {
            if !(tau > std::f64::consts::E) {
                return Err(FujdError::Domain(format!("critical branch needs tau > e, got {tau}")));
            }
            Ok(1.0 / (tau * tau.ln()))
        }
        Regime::Supercritical => Ok(tau.powf(-gamma_tilde(gamma, DEFAULT_EPSILON) / 2.0)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePrediction {
    pub gamma: f64,
    pub regime: Regime,
}

impl RatePrediction {
    pub fn new(gamma: f64) -> Result<Self> {
        Ok(Self {
            gamma,
            regime: Regime::of(gamma)?,
        })
    }

    pub fn mu_star(&self, t: f64) -> f64 {
        mu_star(self.gamma, t)
    }

    pub fn supnorm(&self, t: f64) -> f64 {
        supnorm_from_scale(self.mu_star(t))
    }

    pub fn fk_rate(&self, t: f64) -> f64 {
        fk_rate(self.gamma, t)
    }

    /// Power of `t` in the sup-norm law; the critical case decays like `(ln t)^{-3}` instead.
    pub fn supnorm_exponent(&self) -> f64 {
        match self.regime {
            Regime::Subcritical => -1.5 * (2.0 - self.gamma),
            _ => 0.0,
        }
    }

    /// Power of `ln t` multiplying the sup-norm law.
    pub fn supnorm_log_power(&self) -> f64 {
        match self.regime {
            Regime::Critical => -3.0,
            _ => 0.0,
        }
    }

    /// Exponent of `mu_star` in `t` (subcritical) or `ln t` (critical).
    pub fn mu_exponent(&self) -> f64 {
        match self.regime {
            Regime::Subcritical => 2.0 - self.gamma,
            Regime::Critical => 2.0,
            Regime::Supercritical => 0.0,
        }
    }

    /// `mu_star^{3/2} v_{5, gamma~}(t)`, the inner-source envelope without the spatial weight.
    pub fn source_envelope(&self, t: f64) -> f64 {
        self.mu_star(t).powf(1.5) * v_rate(5, gamma_tilde(self.gamma, DEFAULT_EPSILON), t)
    }
}

/// Sizes of the neglected corrections relative to `mu0`:
/// `mu_star R^{-2/3} / mu0` and `mu_star R^{-7/4} / mu0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionRatios {
    pub t: f64,
    pub mu1: f64,
    pub xi: f64,
}

pub fn correction_ratios(gamma: f64, t: f64, mu0: f64) -> CorrectionRatios {
    let r = t.ln().ln();
    let ms = mu_star(gamma, t);
    CorrectionRatios {
        t,
        mu1: ms * r.powf(-2.0 / 3.0) / mu0,
        xi: ms * r.powf(-1.75) / mu0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_star_examples() {
        let t = 1e7f64;
        assert!((mu_star(1.8, t) / t.powf(0.2) - 1.0).abs() < 1e-12);
        assert_eq!(mu_star(2.0, std::f64::consts::E), 1.0);
        assert_eq!(mu_star(2.7, 123.0), 1.0);
    }

    #[test]
    fn fk_examples() {
        let t = 5e5f64;
        assert!((fk_rate(1.8, t) / t.powf(-0.3) - 1.0).abs() < 1e-12);
        assert!((fk_rate(2.0, std::f64::consts::E) - 1.0).abs() < 1e-15);
        assert_eq!(fk_rate(2.5, t), 1.0);
    }

    #[test]
    fn fk_and_supnorm_same_law() {
        for &g in &[1.6, 1.8, 2.0, 2.5] {
            let p = RatePrediction::new(g).unwrap();
            let ratios: Vec<f64> = (8..=18)
                .map(|k| {
                    let t = 10f64.powf(k as f64 / 2.0);
                    p.fk_rate(t) / p.supnorm(t)
                })
                .collect();
            let (lo, hi) = ratios
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
            assert!(hi / lo < 1.0 + 1e-9, "gamma={g}");
        }
    }

    #[test]
    fn vtilde_branches() {
        assert_eq!(vtilde(1.8, 50.0).unwrap(), 1.0 / 50.0);
        let e2 = std::f64::consts::E.powi(2);
        assert!((vtilde(2.0, e2).unwrap() - 1.0 / (2.0 * e2)).abs() < 1e-15);
        assert!((vtilde(2.5, 100.0).unwrap() - 100f64.powf(-1.25)).abs() < 1e-15);
        assert!((vtilde(4.0, 100.0).unwrap() - 100f64.powf(-1.495)).abs() < 1e-15);
        assert!(vtilde(2.0, 2.0).is_err());
        assert!(vtilde(1.4, 2.0).is_err());
    }

    #[test]
    fn scale_roundtrip() {
        for &mu in &[0.5, 2.0, 13.0] {
            assert!((scale_from_supnorm(supnorm_from_scale(mu)) / mu - 1.0).abs() < 1e-14);
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{FujdError, Result};

/// A radially symmetric initial datum `psi(|x|)`.
pub trait RadialDatum: Sync {
    fn eval(&self, r: f64) -> f64;

    /// Radii where the datum changes character; used as quadrature breakpoints.
    fn scales(&self) -> Vec<f64> {
        vec![1.0]
    }
}

/// Shape of the power-law datum between its two amplitude bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailShape {
    /// `psi0 = D0 <r>^{-gamma}`.
    PowerLaw,
    /// `psi0 = <r>^{-gamma} (D0 + (D1 - D0) exp(-r^2 / width^2))`: amplitude `D1`
    /// at the origin relaxing to `D0` in the far field.
    CoreBump { width: f64 },
}

/// Power-law initial tail with `D0 <r>^{-gamma} <= psi0 <= D1 <r>^{-gamma}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailData {
    pub d0: f64,
    pub d1: f64,
    pub gamma: f64,
    pub shape: TailShape,
}

/// Japanese bracket `sqrt(1 + r^2)`.
pub(crate) fn bracket(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

impl TailData {
    pub fn power_law(d: f64, gamma: f64) -> Result<Self> {
        Self::new(d, d, gamma, TailShape::PowerLaw)
    }

    pub fn core_bump(d0: f64, d1: f64, gamma: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(FujdError::Domain(format!("bump width must be > 0, got {width}")));
        }
        Self::new(d0, d1, gamma, TailShape::CoreBump { width })
    }

    pub fn new(d0: f64, d1: f64, gamma: f64, shape: TailShape) -> Result<Self> {
        if !(d0 > 0.0) || !(d1 >= d0) || !d1.is_finite() {
            return Err(FujdError::Domain(format!(
                "amplitudes must satisfy 0 < D0 <= D1, got D0 = {d0}, D1 = {d1}"
            )));
        }
        if !gamma.is_finite() {
            return Err(FujdError::Domain(format!("tail exponent must be finite, got {gamma}")));
        }
        Ok(Self { d0, d1, gamma, shape })
    }

    /// Extra conditions required by the modulation dynamics: `D1 < 2 D0` and `gamma > 3/2`.
    pub fn validate_for_dynamics(&self) -> Result<()> {
        if !(self.d1 < 2.0 * self.d0) {
            return Err(FujdError::Domain(format!(
                "dynamics require D1 < 2 D0, got D0 = {}, D1 = {}",
                self.d0, self.d1
            )));
        }
        if !(self.gamma > 1.5) {
            return Err(FujdError::Domain(format!(
                "dynamics require gamma > 3/2, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// Far-field amplitude: `<r>^gamma psi0(r) -> D0`.
    pub fn asymptotic_amplitude(&self) -> f64 {
        self.d0
    }

    /// The same datum multiplied by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            d0: self.d0 * lambda,
            d1: self.d1 * lambda,
            ..*self
        }
    }
}

impl RadialDatum for TailData {
    fn eval(&self, r: f64) -> f64 {
        let base = if self.gamma == 0.0 { 1.0 } else { bracket(r).powf(-self.gamma) };
        match self.shape {
            TailShape::PowerLaw => self.d0 * base,
            TailShape::CoreBump { width } => {
                base * (self.d0 + (self.d1 - self.d0) * (-(r * r) / (width * width)).exp())
            }
        }
    }

    fn scales(&self) -> Vec<f64> {
        match self.shape {
            TailShape::PowerLaw => vec![1.0],
            TailShape::CoreBump { width } => vec![1.0, width, 3.0 * width],
        }
    }
}

/// Gaussian datum `exp(-r^2 / (4 s))`, whose heat evolution is known in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianDatum {
    pub s: f64,
}

impl GaussianDatum {
    /// `(s / (s + t))^{n/2} exp(-x^2 / (4 (s + t)))`.
    pub fn evolved(&self, x: f64, t: f64, n: u32) -> f64 {
        let st = self.s + t;
        (self.s / st).powf(n as f64 / 2.0) * (-(x * x) / (4.0 * st)).exp()
    }
}

impl RadialDatum for GaussianDatum {
    fn eval(&self, r: f64) -> f64 {
        (-(r * r) / (4.0 * self.s)).exp()
    }

    fn scales(&self) -> Vec<f64> {
        let w = self.s.sqrt();
        vec![w, 2.0 * w, 6.0 * w, 20.0 * w]
    }
}

/// Datum defined by a closure.
pub struct FnDatum<F> {
    f: F,
    scales: Vec<f64>,
}

impl<F: Fn(f64) -> f64 + Sync> FnDatum<F> {
    pub fn new(f: F, scales: Vec<f64>) -> Self {
        Self { f, scales }
    }
}

impl<F: Fn(f64) -> f64 + Sync> RadialDatum for FnDatum<F> {
    fn eval(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    fn scales(&self) -> Vec<f64> {
        self.scales.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_bounds_hold() {
        let tails = [
            TailData::power_law(1.3, 1.8).unwrap(),
            TailData::core_bump(1.0, 1.7, 2.5, 4.0).unwrap(),
        ];
        for tail in &tails {
            for k in 0..400 {
                let r = 0.05 * k as f64 * (1.0 + k as f64);
                let v = tail.eval(r);
                let b = bracket(r).powf(-tail.gamma);
                assert!(v > 0.0);
                assert!(v >= tail.d0 * b * (1.0 - 1e-14) && v <= tail.d1 * b * (1.0 + 1e-14));
            }
        }
    }

    #[test]
    fn invalid_amplitudes() {
        assert!(TailData::new(0.0, 1.0, 1.8, TailShape::PowerLaw).is_err());
        assert!(TailData::new(2.0, 1.0, 1.8, TailShape::PowerLaw).is_err());
        let t = TailData::core_bump(1.0, 2.5, 1.8, 1.0).unwrap();
        assert!(t.validate_for_dynamics().is_err());
        let t = TailData::power_law(1.0, 1.4).unwrap();
        assert!(t.validate_for_dynamics().is_err());
        assert!(TailData::power_law(1.0, 1.8).unwrap().validate_for_dynamics().is_ok());
    }
}

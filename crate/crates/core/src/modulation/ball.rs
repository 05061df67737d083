//! Cumulative ball integrals of the five-dimensional bubble, tabulated once so that
//! `A(R)` can be evaluated inside the time quadrature.

use std::sync::OnceLock;

use crate::bubble::{bubble_integrals, sphere_area, BubbleIntegrals, BubbleProfile};
use crate::error::{FujdError, Result};
use crate::quadrature::gauss_legendre;

const PANEL: f64 = 0.02;
const PANELS: usize = 2500; // rho up to 50
const NODES: usize = 12;

struct Table {
    rule: (Vec<f64>, Vec<f64>),
    /// `[power, kernel_sq, mixed]` over `B_{j * PANEL}`, without the sphere factor.
    cumulative: Vec<[f64; 3]>,
}

fn integrand(u: &BubbleProfile, r: f64) -> [f64; 3] {
    let r4 = r.powi(4);
    let z = u.dilation_kernel(r);
    [
        r4 * u.value(r).powf(u.critical_power()),
        r4 * z * z,
        r4 * u.potential(r) * z,
    ]
}

fn panel(rule: &(Vec<f64>, Vec<f64>), a: f64, b: f64) -> [f64; 3] {
    let u = BubbleProfile::five();
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = [0.0; 3];
    for (x, w) in rule.0.iter().zip(&rule.1) {
        let f = integrand(&u, c + h * x);
        for k in 0..3 {
            acc[k] += w * h * f[k];
        }
    }
    acc
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let rule = gauss_legendre(NODES);
        let mut cumulative = Vec::with_capacity(PANELS + 1);
        let mut acc = [0.0f64; 3];
        cumulative.push(acc);
        for j in 0..PANELS {
            let p = panel(&rule, j as f64 * PANEL, (j + 1) as f64 * PANEL);
            for k in 0..3 {
                acc[k] += p[k];
            }
            cumulative.push(acc);
        }
        Table { rule, cumulative }
    })
}

/// Ball integrals over `B_rho`, n = 5.
pub fn ball_integrals(rho: f64) -> Result<BubbleIntegrals> {
    if !(rho >= 0.0) {
        return Err(FujdError::Domain(format!("radius must be >= 0, got {rho}")));
    }
    if rho >= PANEL * PANELS as f64 {
        return bubble_integrals(5, rho);
    }
    let tab = table();
    let j = (rho / PANEL).floor() as usize;
    let base = tab.cumulative[j];
    let rest = panel(&tab.rule, j as f64 * PANEL, rho);
    let s = sphere_area(5);
    Ok(BubbleIntegrals {
        power: s * (base[0] + rest[0]),
        kernel_sq: s * (base[1] + rest[1]),
        mixed: s * (base[2] + rest[2]),
        rel_error: 1e-13,
    })
}

/// `A(R)` at n = 5 from the table.
pub fn a_tabulated(radius: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(FujdError::Domain(format!("cutoff radius must be > 0, got {radius}")));
    }
    let b = ball_integrals(4.0 * radius)?;
    Ok(-7.0 / 3.0 * b.mixed / b.kernel_sq)
}

//! Pure heat flow of a Gaussian against its closed-form evolution, at three step tolerances.
//!
//! cargo run --release --example heat_oracle

use fujd::heatkernel::GaussianDatum;
use fujd::pde::{build_grid, simulate, GridParams, InitialData, Profile, SimConfig};

fn main() -> fujd::Result<()> {
    let g = GaussianDatum { s: 1.0 };
    for tol in [1e-6, 1e-7, 5e-9] {
        let mut c = SimConfig::new(1.8, 1.0, 11.0);
        c.nonlinearity_on = false;
        c.tol = tol;
        c.initial = InitialData::ScaledProfile { alpha: 1.0, profile: Profile::Gaussian { s: 1.0 } };
        c.grid = GridParams { h_core: 0.02, r_switch: 10.0, q: 1.05, length: 200.0 };
        let rep = simulate(&c)?;
        let grid = build_grid(&c)?;
        let sup = g.evolved(0.0, 10.0, 5);
        let err = grid
            .nodes
            .iter()
            .zip(&rep.final_field.values)
            .filter(|(r, _)| **r <= 11f64.sqrt())
            .map(|(r, v)| (v - g.evolved(*r, 10.0, 5)).abs())
            .fold(0.0, f64::max);
        println!(
            "tol {tol:.0e}: {} steps, relative sup error {:.3e}, energy rises {}",
            rep.accepted_steps,
            err / sup,
            rep.energy_violations
        );
    }
    Ok(())
}

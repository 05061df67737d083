//! Spatially constant data without diffusion: `u' = u^{7/3}` blows up at `3 / (4 u0^{4/3})`.
//!
//! cargo run --release --example ode_blowup

use fujd::pde::{simulate, GridParams, InitialData, Profile, SimConfig, SimStatus};

fn main() -> fujd::Result<()> {
    for u0 in [0.5f64, 1.0, 2.0] {
        let exact = 0.75 * u0.powf(-4.0 / 3.0);
        let mut c = SimConfig::new(1.8, 1.0, 1.0 + 2.0 * exact);
        c.diffusion_on = false;
        c.tol = 1e-6;
        c.grid = GridParams { h_core: 0.05, r_switch: 10.0, q: 1.2, length: 12.0 };
        c.initial = InitialData::ScaledProfile { alpha: u0, profile: Profile::Constant };
        let rep = simulate(&c)?;
        match rep.status {
            SimStatus::BlewUp { t_b } => println!(
                "u0 = {u0}: blow-up after {:.6} (exact {exact:.6}, rel. error {:.2e})",
                t_b - 1.0,
                (t_b - 1.0 - exact).abs() / exact
            ),
            s => println!("u0 = {u0}: {s}"),
        }
    }
    Ok(())
}

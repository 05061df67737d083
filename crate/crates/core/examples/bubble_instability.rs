//! The sampled bubble is a stationary solution only up to discretisation error, and the
//! linearised operator has one growing mode, so coarse grids drift off it.
//!
//! cargo run --release --example bubble_instability

use fujd::pde::{simulate, GridParams, InitialData, Profile, SimConfig};

fn main() -> fujd::Result<()> {
    let peak = fujd::bubble::BubbleProfile::five().alpha();
    for h in [0.05, 0.01, 0.003] {
        let mut c = SimConfig::new(1.8, 1.0, 2.0);
        c.initial = InitialData::ScaledProfile { alpha: 1.0, profile: Profile::Bubble { truncate: None } };
        c.grid = GridParams { h_core: h, r_switch: 10.0, q: 1.03, length: 1e4 };
        c.tol = 1e-6;
        c.blowup_threshold = 10.0 * peak;
        let rep = simulate(&c)?;
        let drift = rep
            .points
            .iter()
            .map(|p| (p.sup_norm / peak - 1.0).abs())
            .fold(0.0, f64::max);
        println!("h = {h}: {}, largest relative drift of the sup norm {:.3e}", rep.status, drift);
    }
    Ok(())
}

//! A run split at a checkpoint reproduces the uninterrupted run.
//!
//! cargo run --release --example checkpoint_restart

use fujd::pde::{build_grid, simulate, simulate_from, Checkpoint, GridParams, InitialData, Profile, SimConfig};

fn main() -> fujd::Result<()> {
    let mut c = SimConfig::new(1.8, 1.0, 3.0);
    c.fixed_dt = Some(1e-3);
    c.grid = GridParams { h_core: 0.05, r_switch: 10.0, q: 1.05, length: 100.0 };
    c.initial = InitialData::ScaledProfile { alpha: 0.5, profile: Profile::Gaussian { s: 1.0 } };
    let whole = simulate(&c)?;

    let mut first = c.clone();
    first.t_end = 2.0;
    let half = simulate(&first)?;
    let text = Checkpoint::new(&build_grid(&first)?, first.max_nodes, &half.final_field).to_string()?;
    let (grid, field) = Checkpoint::parse(&text)?.restore()?;
    let mut second = c.clone();
    second.t_start = 2.0;
    let rest = simulate_from(&second, &grid, field)?;

    let diff = whole
        .final_field
        .values
        .iter()
        .zip(&rest.final_field.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("checkpoint is {} bytes; largest difference at t = 3: {diff:.3e}", text.len());
    Ok(())
}

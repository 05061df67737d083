//! Weighted residual of the modulated ansatz against its envelope, under grid refinement.
//!
//! cargo run --release --example ansatz_residual

use fujd::heatkernel::TailData;
use fujd::pde::{ansatz_residual, residual_grid, residual_states, RESIDUAL_CONSTANT};

fn main() -> fujd::Result<()> {
    let tail = TailData::power_law(1.0, 1.8)?;
    let times = [1e6, 1e7, 1e8];
    let states = residual_states(&tail, &times)?;
    println!("envelope constant {RESIDUAL_CONSTANT}");
    for s in states.iter().filter(|s| times.iter().any(|t| (s.t / t - 1.0).abs() < 1e-9)) {
        for div in [1600.0, 3200.0, 6400.0, 12800.0] {
            let g = residual_grid(s, tail.gamma, div)?;
            let r = ansatz_residual(s, &tail, &g)?;
            println!("t = {:.0e}, h = mu0/{div}: ratio {r:.4} ({} nodes)", s.t, g.len());
        }
    }
    Ok(())
}

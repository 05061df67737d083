//! Regenerates the calibrated envelope constants.
//!
//! cargo run --release --example calibrate_envelopes

use fujd::heatkernel::{calibrate_center_envelope, calibrate_rough_constant, centre_sweep_times};
use fujd::modulation::{calibrate_inner_source, log_grid};
use fujd::pde::calibrate_residual;

fn main() -> fujd::Result<()> {
    let times = centre_sweep_times();
    println!("centre envelope constants (n = 5):");
    for gamma in [1.6, 1.8, 2.0, 2.5, 2.7, 3.0] {
        let k = calibrate_center_envelope(5, gamma, &times)?;
        println!("    ({gamma:.1}, {k:.6e}),");
    }
    let gammas = [0.0, 1.0, 1.6, 1.8, 2.0, 2.5, 2.99, 3.0, 4.0, 6.0];
    let xs = [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 10.0, 30.0, 100.0];
    let ts = [1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6];
    let k = calibrate_rough_constant(&gammas, &xs, &ts)?;
    println!("rough bound constant: {k:.6}");
    let k = calibrate_inner_source(&[1.6, 1.8, 2.0, 2.5], &log_grid(1e5, 1e12, 10))?;
    println!("inner source constant: {k:.6}");
    let k = calibrate_residual(1.8, &[1e6, 1e7, 1e8])?;
    println!("ansatz residual constant (gamma = 1.8): {k:.6}");
    Ok(())
}

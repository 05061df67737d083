//! Centre value of the heat evolution of `<r>^{-gamma}` against its large-time expansion,
//! one fitted error order per regime.
//!
//! cargo run --release --example kernel_asymptotics

use fujd::heatkernel::{kernel_check, kernel_check_slope};

fn main() -> fujd::Result<()> {
    let times: Vec<f64> = (2..=6).map(|k| 10f64.powi(k)).collect();
    let gammas = [0.0, 1.0, 1.8, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
    let rows = kernel_check(5, &gammas, &times)?;
    println!("{:>6} {:>10} {:>10} {:>12} {:>6}", "gamma", "predicted", "fitted", "log", "pass");
    for chunk in rows.chunks(times.len()) {
        let s = kernel_check_slope(chunk)?;
        println!(
            "{:>6.2} {:>10.3} {:>10.3} {:>12} {:>6}",
            s.gamma, s.predicted, s.fitted, format!("{:?}", s.log_factor), s.pass
        );
    }
    Ok(())
}

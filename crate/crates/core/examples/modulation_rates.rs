//! Growth of the bubble scale `mu0(t)` in each tail regime, and the rescaled time `tau`.
//!
//! cargo run --release --example modulation_rates

use fujd::fit::linear_fit;
use fujd::heatkernel::TailData;
use fujd::modulation::{log_grid, Mu0Solver, PsiMode, DEFAULT_M};

fn main() -> fujd::Result<()> {
    let times = log_grid(1e6, 1e9, 10);
    let lt: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    println!("slope of ln mu0 against ln t on [1e6, 1e9] (fast mode):");
    for (gamma, d) in [(1.6, 0.1), (1.8, 1.0)] {
        let solver = Mu0Solver::new(TailData::power_law(d, gamma)?, DEFAULT_M, PsiMode::Fast)?;
        let mu: Vec<f64> = solver.solve(&times)?.iter().map(|s| s.mu0.ln()).collect();
        let fit = linear_fit(&lt, &mu)?;
        println!("  gamma = {gamma}: {:.4} (2 - gamma = {:.1})", fit.slope, 2.0 - gamma);
    }
    let solver = Mu0Solver::new(TailData::power_law(1.0, 2.0)?, DEFAULT_M, PsiMode::Fast)?;
    let llt: Vec<f64> = lt.iter().map(|l| l.ln()).collect();
    let mu: Vec<f64> = solver.solve(&times)?.iter().map(|s| s.mu0.ln()).collect();
    println!("gamma = 2: slope of ln mu0 against ln ln t: {:.4}", linear_fit(&llt, &mu)?.slope);
    let solver = Mu0Solver::new(TailData::power_law(1.0, 2.5)?, DEFAULT_M, PsiMode::Fast)?;
    println!(
        "gamma = 2.5: mu0(inf) = {:.6}, relative tail beyond 1e8 = {:.4}%",
        solver.mu0_limit()?,
        100.0 * solver.cauchy_tail(1e8)?
    );

    let solver = Mu0Solver::new(TailData::power_law(1.0, 1.8)?, DEFAULT_M, PsiMode::Fast)?;
    let grid = log_grid(1e5, 1e28, 4);
    let states = solver.solve(&grid)?;
    println!("gamma = 1.8: local slope of ln tau against ln t (2 gamma - 3 = 0.6):");
    for w in states.windows(9).step_by(8) {
        let x: Vec<f64> = w.iter().map(|s| s.t.ln()).collect();
        let y: Vec<f64> = w.iter().map(|s| s.tau.ln()).collect();
        println!("  t in [{:.0e}, {:.0e}]: {:.4}", w[0].t, w[8].t, linear_fit(&x, &y)?.slope);
    }
    Ok(())
}

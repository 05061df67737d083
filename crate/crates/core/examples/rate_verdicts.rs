//! Verdicts of the sup-norm rate comparison on modulation trajectories, plus a made-up
//! self-similar decay that must be rejected.
//!
//! cargo run --release --example rate_verdicts

use fujd::analysis::compare_rates;
use fujd::heatkernel::TailData;
use fujd::modulation::{log_grid, supnorm_from_scale, Mu0Solver, PsiMode, DEFAULT_M};

fn main() -> fujd::Result<()> {
    let times = log_grid(1e6, 1e9, 10);
    for gamma in [1.6, 1.8, 2.0, 2.5] {
        let solver = Mu0Solver::new(TailData::power_law(0.2, gamma)?, DEFAULT_M, PsiMode::Fast)?;
        let series: Vec<(f64, f64)> =
            solver.solve(&times)?.iter().map(|s| (s.t, supnorm_from_scale(s.mu0))).collect();
        let r = compare_rates(&series, gamma, None)?;
        println!(
            "gamma {gamma}: measured {:.4} +- {:.4}, predicted {:.4}: {:?}",
            r.measured_slope, r.stderr, r.predicted_slope, r.verdict
        );
    }
    let fake: Vec<(f64, f64)> = times.iter().map(|&t| (t, t.powf(-0.75))).collect();
    let r = compare_rates(&fake, 1.8, None)?;
    println!("t^(-3/4) against gamma 1.8: measured {:.4}: {:?}", r.measured_slope, r.verdict);
    Ok(())
}

//! Full PDE run from the bubble-plus-tail ansatz at `t = 1e5`, compared with the modulation law.
//!
//! cargo run --release --example ansatz_simulation [t_span]

use fujd::modulation::{Mu0Solver, PsiMode};
use fujd::pde::{ansatz_scale, simulate, GridParams, SimConfig};

fn main() -> fujd::Result<()> {
    let span: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100.0);
    let t0 = 1e5;
    let mut c = SimConfig::new(1.8, t0, t0 + span);
    c.grid = GridParams { h_core: 0.05, r_switch: 40.0, q: 1.03, length: 2e4 };
    c.tol = 1e-6;
    c.record_every = 50;
    println!("mu0(t_start) = {:.4}", ansatz_scale(&c)?);
    let rep = simulate(&c)?;
    println!(
        "{} after {} steps ({} positivity, {} energy violations)",
        rep.status, rep.accepted_steps, rep.positivity_violations, rep.energy_violations
    );
    let solver = Mu0Solver::new(c.tail()?, c.m, PsiMode::default())?;
    println!("{:>14} {:>12} {:>10} {:>10}", "t - t_start", "sup", "mu_fit", "mu0");
    for p in rep.points.iter().step_by((rep.points.len() / 15).max(1)) {
        let mu0 = solver.solve(&[t0, p.t.max(t0 * (1.0 + 1e-12))])?[1].mu0;
        println!("{:>14.4} {:>12.5e} {:>10.4} {:>10.4}", p.t - t0, p.sup_norm, p.mu_fit, mu0);
    }
    Ok(())
}

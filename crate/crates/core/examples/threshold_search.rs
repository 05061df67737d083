//! Bisection for the blow-up threshold amplitude, checked on the ODE where it is known.
//!
//! cargo run --release --example threshold_search

use fujd::analysis::{ode_threshold, threshold_bisect};
use fujd::pde::{GridParams, InitialData, Profile, SimConfig};

fn main() -> fujd::Result<()> {
    let horizon = 1.0;
    let mut c = SimConfig::new(1.8, 1.0, 1.0 + horizon);
    c.diffusion_on = false;
    c.tol = 1e-7;
    c.blowup_threshold = 1e4;
    c.grid = GridParams { h_core: 0.05, r_switch: 10.0, q: 1.2, length: 12.0 };
    c.initial = InitialData::ScaledProfile { alpha: 1.0, profile: Profile::Constant };
    let r = threshold_bisect(&c, 0.5, 1.0, 1e-3, true)?;
    println!(
        "bracket [{:.5}, {:.5}] after {} halvings, {} runs; exact {:.5}",
        r.alpha_lo,
        r.alpha_hi,
        r.iterations,
        r.trials.len(),
        ode_threshold(horizon)
    );
    if let Some(h) = r.horizon {
        println!(
            "doubled horizon t_end = {}: lo still global {}, hi still blows up {}",
            h.t_end, h.lo_still_global, h.hi_still_blows_up
        );
    }
    Ok(())
}

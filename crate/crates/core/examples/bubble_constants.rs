//! Bubble normalisation, the mixed integral ratio and the truncated constant `A(R)`.
//!
//! cargo run --release --example bubble_constants

use fujd::bubble::{a_limit, a_of_r, bubble_integrals, BubbleProfile};

fn main() -> fujd::Result<()> {
    let u = BubbleProfile::five();
    println!("alpha_5 = {:.15} (15^(3/4) = {:.15})", u.alpha(), 15f64.powf(0.75));
    let full = bubble_integrals(5, f64::INFINITY)?;
    println!("int U^(7/3) Z / int U^(7/3) = {:.12} (-9/14 = {:.12})", full.mixed_ratio(), -9.0 / 14.0);
    println!("int Z^2 = {:.10}", full.kernel_sq);
    for r in [1.0, 2.0, 5.0, 10.0, 100.0, 1e3] {
        println!("A({r:>6}) = {:.8}", a_of_r(r, 5)?);
    }
    println!("A(inf)    = {:.8}", a_limit(5)?);
    Ok(())
}

use fujd::heatkernel::GaussianDatum;
use fujd::pde::{build_grid, simulate, GridParams, InitialData, Profile, SimConfig, SimStatus};

fn gaussian_config(alpha: f64, s: f64, t_start: f64, t_end: f64) -> SimConfig {
    let mut c = SimConfig::new(1.8, t_start, t_end);
    c.initial = InitialData::ScaledProfile { alpha, profile: Profile::Gaussian { s } };
    c
}

#[test]
fn pure_heat_global_order_two() {
    let exact = GaussianDatum { s: 1.0 };
    let mut params = GridParams { h_core: 0.1, r_switch: 20.0, q: 1.04, length: 100.0 };
    let mut errs = Vec::new();
    for _ in 0..3 {
        let mut c = gaussian_config(1.0, 1.0, 1.0, 2.0);
        c.nonlinearity_on = false;
        c.grid = params;
        c.fixed_dt = Some(0.5 * params.h_core * params.h_core);
        let rep = simulate(&c).unwrap();
        let g = build_grid(&c).unwrap();
        let err = g
            .nodes
            .iter()
            .zip(&rep.final_field.values)
            .filter(|(r, _)| **r <= 2f64.sqrt())
            .map(|(&r, v)| (v - exact.evolved(r, 1.0, 5)).abs())
            .fold(0.0, f64::max);
        errs.push(err);
        params = params.refined();
    }
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((order - 2.0).abs() <= 0.2, "{errs:?}");
    }
}

#[test]
fn parabolic_scaling_symmetry() {
    let lambda = 2.0f64;
    let base = {
        let mut c = gaussian_config(2.0, 1.0, 1.0, 1.5);
        c.grid = GridParams { h_core: 0.04, r_switch: 10.0, q: 1.04, length: 100.0 };
        c.dt0 = Some(1e-4);
        c
    };
    let mut scaled = base.clone();
    scaled.initial = InitialData::ScaledProfile {
        alpha: 2.0 * lambda.powf(1.5),
        profile: Profile::Gaussian { s: 1.0 / (lambda * lambda) },
    };
    scaled.grid = base.grid.scaled(1.0 / lambda);
    scaled.t_start = base.t_start / (lambda * lambda);
    scaled.t_end = base.t_end / (lambda * lambda);
    scaled.dt0 = Some(1e-4 / (lambda * lambda));
    scaled.dt_min = base.dt_min / (lambda * lambda);
    scaled.dt_max = Some(base.dt_max() / (lambda * lambda));
    let mut fine = base.clone();
    fine.grid = base.grid.refined();

    let u = simulate(&base).unwrap();
    let v = simulate(&scaled).unwrap();
    let w = simulate(&fine).unwrap();
    assert_eq!(u.status, SimStatus::Completed);
    assert_eq!(v.status, SimStatus::Completed);
    let sup_u = u.final_field.values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let sym = u
        .final_field
        .values
        .iter()
        .zip(&v.final_field.values)
        .map(|(a, b)| (lambda.powf(1.5) * a - b).abs())
        .fold(0.0, f64::max)
        / (lambda.powf(1.5) * sup_u);
    // both grids have a node at the origin
    let disc = (u.final_field.values[0] - w.final_field.values[0]).abs() / sup_u;
    assert!(sym <= 2.0 * disc, "symmetry {sym:e} discretisation {disc:e}");
}

#[test]
fn decaying_bubble_keeps_structure() {
    let mut c = SimConfig::new(1.8, 1.0, 30.0);
    c.initial = InitialData::ScaledProfile { alpha: 0.5, profile: Profile::Bubble { truncate: Some(5.0) } };
    let rep = simulate(&c).unwrap();
    assert_eq!(rep.status, SimStatus::Completed);
    assert_eq!(rep.positivity_violations, 0);
    assert_eq!(rep.energy_violations, 0);
    assert!(rep.points.windows(2).all(|w| w[1].sup_norm <= w[0].sup_norm * (1.0 + 1e-12)));
}

#[test]
fn ansatz_run_keeps_positivity_and_energy_order() {
    let mut c = SimConfig::new(1.8, 1e5, 1e6);
    c.grid = GridParams { h_core: 0.05, r_switch: 40.0, q: 1.03, length: 2e4 };
    c.tol = 1e-6;
    c.max_steps = 10_000;
    c.record_every = 100;
    let rep = simulate(&c).unwrap();
    assert!(rep.accepted_steps >= 10_000);
    assert_eq!(rep.positivity_violations, 0);
    assert_eq!(rep.energy_violations, 0);
}

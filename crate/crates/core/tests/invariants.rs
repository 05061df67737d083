use proptest::prelude::*;

use fujd::analysis::{compare_rates, dirichlet_energy, loglog_slope, sup_norm};
use fujd::bubble::{a_of_r, BubbleProfile};
use fujd::heatkernel::{c_constant, c_constant_quadrature, heat_convolve, centre_heat_value, TailData};
use fujd::modulation::{a_tabulated, log_grid, mu0_solve, orthogonality_residual, PsiMode, DEFAULT_M};
use fujd::pde::{laplacian_values, Checkpoint, Field, GridParams, RadialGrid, SimConfig, Stepper, DEFAULT_MAX_NODES};

fn grid_strategy() -> impl Strategy<Value = GridParams> {
    (0.02f64..0.2, 2.0f64..20.0, 1.01f64..1.2, 50.0f64..500.0)
        .prop_map(|(h_core, r_switch, q, length)| GridParams { h_core, r_switch, q, length })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadratic_laplacian_is_exact(p in grid_strategy(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let g = RadialGrid::new(p, 0.0, DEFAULT_MAX_NODES);
        prop_assume!(g.is_ok());
        let g = g.unwrap();
        let u: Vec<f64> = g.nodes.iter().map(|r| a + b * r * r).collect();
        let lap = laplacian_values(&u, &g);
        for (i, l) in lap.iter().enumerate().take(g.len() - 1) {
            prop_assert!((l - 10.0 * b).abs() <= 1e-8 * (1.0 + b.abs() * g.nodes[i].powi(2)));
        }
    }

    #[test]
    fn implicit_step_preserves_positivity(
        p in grid_strategy(),
        amp in 0.0f64..50.0,
        width in 0.1f64..10.0,
        dt in 1e-6f64..10.0,
        robin in 0.0f64..3.0,
    ) {
        let g = RadialGrid::new(p, robin, DEFAULT_MAX_NODES);
        prop_assume!(g.is_ok());
        let g = g.unwrap();
        let f = Field::sample(&g, 0.0, |r| amp * (-(r / width).powi(2)).exp());
        let mut s = Stepper::new(&g, false, true);
        let out = s.fixed(&f, dt).unwrap();
        prop_assert!(out.is_nonnegative() && out.is_finite());
        // pure diffusion: the maximum does not grow and the energy does not rise
        prop_assert!(sup_norm(&out, &g).0 <= sup_norm(&f, &g).0 * (1.0 + 1e-12));
        prop_assert!(dirichlet_energy(&out, &g) <= dirichlet_energy(&f, &g) * (1.0 + 1e-12));
    }

    #[test]
    fn heat_convolution_linear_and_positive(d in 0.1f64..5.0, gamma in 0.0f64..6.0, lx in -2.0f64..3.0, lt in -1.0f64..6.0) {
        let x = 10f64.powf(lx);
        let t = 10f64.powf(lt);
        let tail = TailData::power_law(1.0, gamma).unwrap();
        let a = heat_convolve(&tail, x, t, 5).unwrap();
        let b = heat_convolve(&tail.scaled(d), x, t, 5).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!((b / (d * a) - 1.0).abs() < 1e-10);
        // bounded by the supremum of the datum
        prop_assert!(a <= 1.0 + 1e-8);
    }

    #[test]
    fn c_constant_routes_agree(gamma in -2.0f64..4.9) {
        let closed = c_constant(5, gamma).unwrap();
        let quad = c_constant_quadrature(5, gamma).unwrap();
        prop_assert!((quad / closed - 1.0).abs() < 1e-8, "{} {}", closed, quad);
    }

    #[test]
    fn centre_value_tends_to_leading_term(gamma in 0.5f64..4.5) {
        let t = 1e8;
        let lhs = centre_heat_value(5, gamma, t).unwrap();
        let v = t.powf(-gamma / 2.0);
        prop_assert!((lhs / (c_constant(5, gamma).unwrap() * v) - 1.0).abs() < 0.02);
    }

    #[test]
    fn tabulated_a_matches_adaptive(r in 0.3f64..12.0) {
        let a = a_tabulated(r).unwrap();
        let b = a_of_r(r, 5).unwrap();
        prop_assert!((a - b).abs() < 1e-8 * b.abs().max(1.0));
    }

    #[test]
    fn mu0_scales_with_amplitude_squared(d in 0.05f64..1.0, gamma in prop::sample::select(vec![1.8, 2.0, 2.5])) {
        let times = log_grid(1e6, 1e8, 4);
        let base = TailData::power_law(0.05, gamma).unwrap();
        let a = mu0_solve(&base, DEFAULT_M, &times, PsiMode::Fast).unwrap();
        let b = mu0_solve(&base.scaled(d / 0.05), DEFAULT_M, &times, PsiMode::Fast).unwrap();
        let k = (d / 0.05).powi(2);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((y.mu0 / (k * x.mu0) - 1.0).abs() < 1e-10);
            prop_assert!(orthogonality_residual(y).unwrap().abs() <= 1e-6);
        }
    }

    #[test]
    fn rate_verdict_ignores_scale(c in 1e-3f64..1e3, p in -1.0f64..0.2) {
        let series: Vec<(f64, f64)> = log_grid(1e6, 1e9, 10).into_iter().map(|t| (t, t.powf(p))).collect();
        let scaled: Vec<(f64, f64)> = series.iter().map(|&(t, y)| (t, c * y)).collect();
        let a = compare_rates(&series, 1.8, None).unwrap();
        let b = compare_rates(&scaled, 1.8, None).unwrap();
        prop_assert!((a.measured_slope - b.measured_slope).abs() < 1e-9);
        prop_assert_eq!(a.verdict, b.verdict);
        let fit = loglog_slope(&series, (1e6, 1e9), 0.0).unwrap();
        prop_assert!((fit.slope - p).abs() < 1e-10);
    }

    #[test]
    fn checkpoint_round_trip(vals in prop::collection::vec(-1e6f64..1e6, 1..4), t in 1e-3f64..1e9) {
        let g = RadialGrid::new(GridParams::default(), 1.8, DEFAULT_MAX_NODES).unwrap();
        let f = Field::sample(&g, t, |r| vals[(r as usize) % vals.len()] * (1.0 + r).recip());
        let cp = Checkpoint::new(&g, DEFAULT_MAX_NODES, &f);
        let back = Checkpoint::parse(&cp.to_string().unwrap()).unwrap();
        prop_assert_eq!(back, cp);
    }

    #[test]
    fn config_round_trip(gamma in 1.6f64..3.0, t0 in 1.0f64..1e6, span in 1.0f64..1e3, tol in 1e-8f64..1e-3) {
        let mut c = SimConfig::new(gamma, t0, t0 * (1.0 + span));
        c.tol = tol;
        c.d1 = Some(1.5);
        let text = toml::to_string(&c).unwrap();
        let back: SimConfig = toml::from_str(&text).unwrap();
        prop_assert_eq!(&back, &c);
        let json = serde_json::to_string(&c).unwrap();
        let back: SimConfig = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn bubble_dilation_kernel_is_scale_derivative(r in 0.0f64..50.0) {
        // Z = d/dl [l^{3/2} U(l r)] at l = 1
        let u = BubbleProfile::five();
        let h = 1e-5;
        let f = |l: f64| l.powf(1.5) * u.value(l * r);
        let fd = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
        prop_assert!((fd - u.dilation_kernel(r)).abs() < 1e-7 * (1.0 + u.value(r)));
    }
}

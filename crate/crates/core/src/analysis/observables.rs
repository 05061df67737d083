use crate::bubble::sphere_area;
use crate::pde::{Field, RadialGrid};

/// Maximum of `|u|` over the nodes, refined by the parabola through the discrete maximiser
/// and its neighbours. At the origin the even extension makes the vertex the node itself.
pub fn sup_norm(field: &Field, grid: &RadialGrid) -> (f64, f64) {
    let u = &field.values;
    let r = &grid.nodes;
    let Some((i, _)) = u
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
    else {
        return (0.0, 0.0);
    };
    if i == 0 || i + 1 == u.len() {
        return (u[i].abs(), r[i]);
    }
    let (x0, x1, x2) = (r[i - 1], r[i], r[i + 1]);
    let (y0, y1, y2) = (u[i - 1].abs(), u[i].abs(), u[i + 1].abs());
    // Newton form of the interpolating parabola
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let c = (d12 - d01) / (x2 - x0);
    if !(c < 0.0) {
        return (y1, x1);
    }
    let b = d01 - c * (x0 + x1);
    let xv = (-b / (2.0 * c)).clamp(x0, x2);
    let yv = y0 + d01 * (xv - x0) + c * (xv - x0) * (xv - x1);
    (yv.max(y1), xv)
}

/// Energy consistent with the finite-volume scheme:
/// `|S^4| [ 1/2 sum_faces a (u_{i+1} - u_i)^2 + 1/2 gamma~ L^3 u_N^2 - 3/10 sum_cells V |u|^{10/3} ]`.
/// The boundary term is the far-field part of the Dirichlet form under the Robin condition.
pub fn energy(field: &Field, grid: &RadialGrid) -> f64 {
    dirichlet_energy(field, grid) - sphere_area(5) * 0.3 * potential_sum(&field.values, grid)
}

/// The gradient part of `energy` alone: the Lyapunov functional of the pure heat flow.
pub fn dirichlet_energy(field: &Field, grid: &RadialGrid) -> f64 {
    let u = &field.values;
    let grad: f64 = grid
        .face_coeff
        .iter()
        .zip(u.windows(2))
        .map(|(a, w)| a * (w[1] - w[0]).powi(2))
        .sum();
    let boundary = grid.robin * grid.length().powi(3) * u[u.len() - 1].powi(2);
    sphere_area(5) * 0.5 * (grad + boundary)
}

fn potential_sum(u: &[f64], grid: &RadialGrid) -> f64 {
    grid.volumes
        .iter()
        .zip(u)
        .map(|(v, x)| v * x.abs().powf(10.0 / 3.0))
        .sum()
}

/// Energy of the configured flow: `energy` with the reaction on, `dirichlet_energy` without.
pub fn flow_energy(field: &Field, grid: &RadialGrid, nonlinear: bool) -> f64 {
    if nonlinear {
        energy(field, grid)
    } else {
        dirichlet_energy(field, grid)
    }
}

/// Trapezoidal `|S^4| int (1/2 u_r^2 - 3/10 |u|^{10/3}) r^4 dr` with one-sided node
/// differences interpolated to the nodes.
pub fn energy_trapezoid(field: &Field, grid: &RadialGrid) -> f64 {
    let u = &field.values;
    let r = &grid.nodes;
    let n = u.len();
    let du: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 {
                0.0
            } else if i + 1 == n {
                (u[i] - u[i - 1]) / (r[i] - r[i - 1])
            } else {
                let (hm, hp) = (r[i] - r[i - 1], r[i + 1] - r[i]);
                (-hp / (hm * (hm + hp))) * u[i - 1]
                    + ((hp - hm) / (hm * hp)) * u[i]
                    + (hm / (hp * (hm + hp))) * u[i + 1]
            }
        })
        .collect();
    let dens: Vec<f64> = (0..n)
        .map(|i| (0.5 * du[i] * du[i] - 0.3 * u[i].abs().powf(10.0 / 3.0)) * r[i].powi(4))
        .collect();
    let integral: f64 = (1..n)
        .map(|i| 0.5 * (r[i] - r[i - 1]) * (dens[i] + dens[i - 1]))
        .sum();
    sphere_area(5) * integral
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bubble::BubbleProfile;
    use crate::pde::{GridParams, DEFAULT_MAX_NODES};

    fn grid() -> RadialGrid {
        let p = GridParams { h_core: 0.01, r_switch: 4.0, q: 1.02, length: 2e3 };
        RadialGrid::new(p, 0.0, DEFAULT_MAX_NODES).unwrap()
    }

    #[test]
    fn sup_of_bubble() {
        let g = grid();
        let f = Field::sample(&g, 0.0, |r| BubbleProfile::five().value(r));
        let (v, r) = sup_norm(&f, &g);
        assert!((v - 15f64.powf(0.75)).abs() < 1e-6);
        assert_eq!(r, 0.0);
        let c = Field::new(0.0, vec![2.5; g.len()]);
        assert_eq!(sup_norm(&c, &g).0, 2.5);
    }

    #[test]
    fn parabolic_refinement_finds_offgrid_peak() {
        let g = grid();
        let f = Field::sample(&g, 0.0, |r| (1.0 - (r - 1.234_5).powi(2)).max(0.0));
        let (v, r) = sup_norm(&f, &g);
        assert!((v - 1.0).abs() < 1e-12 && (r - 1.234_5).abs() < 1e-9, "{v} {r}");
    }

    #[test]
    fn zero_energy() {
        let g = grid();
        assert_eq!(energy(&Field::new(0.0, vec![0.0; g.len()]), &g), 0.0);
    }

    #[test]
    fn bubble_is_critical_for_scaling() {
        let g = grid();
        let u = BubbleProfile::five();
        let e = |lam: f64, trap: bool| {
            let f = Field::sample(&g, 0.0, |r| lam * u.value(r));
            if trap {
                energy_trapezoid(&f, &g)
            } else {
                energy(&f, &g)
            }
        };
        // scale: int U^{10/3} = int |grad U|^2 for the critical point
        let p: f64 = g
            .nodes
            .windows(2)
            .map(|w| {
                let h = |r: f64| u.value(r).powf(10.0 / 3.0) * r.powi(4);
                0.5 * (w[1] - w[0]) * (h(w[0]) + h(w[1]))
            })
            .sum::<f64>()
            * sphere_area(5);
        let d = 1e-3;
        for trap in [true, false] {
            let deriv = (e(1.0 + d, trap) - e(1.0 - d, trap)) / (2.0 * d);
            assert!(deriv.abs() < 1e-3 * p, "trap={trap}: {deriv} vs {p}");
        }
        // the two discretisations agree as h -> 0
        let f = Field::sample(&g, 0.0, |r| u.value(r));
        let (a, b) = (energy(&f, &g), energy_trapezoid(&f, &g));
        assert!((a - b).abs() < 1e-3 * a.abs(), "{a} {b}");
    }
}

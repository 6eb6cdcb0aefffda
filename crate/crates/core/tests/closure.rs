use fermi1d::density::{
    density_curvature, density_exact, density_gradient, density_profile, density_semiclassical,
    density_exact_scaled, uniform_grid, Method,
};
use fermi1d::expansion::{density_expanded, friedel_stretch, ft_expanded, propagate_numeric};
use fermi1d::model::{fermi_length, fermi_wavenumber};
use fermi1d::momentum::{correlator_asymptotic, correlator_centered, momentum_density_scaled};
use fermi1d::oracle::quad::{quad_integrate, QuadratureSpec};
use fermi1d::oracle::{finite_diff, numeric_ft, numeric_ft_fn};
use fermi1d::spectral::{
    ft_exact, ft_semiclassical, ft_semiclassical_quadratic_argument, ft_sum_rule, SpectralMethod,
};

fn integral<F: Fn(f64) -> f64>(f: F, half: f64) -> f64 {
    let spec = QuadratureSpec::new(-half, half).panels(64).tol(1e-12, 1e-13);
    quad_integrate(f, &spec).unwrap().value
}

#[test]
fn density_integrates_to_particle_number() {
    for n in [1usize, 2, 7, 30, 100, 1000] {
        let half = fermi_length(n) + 12.0;
        let s = integral(|x| density_exact(x, n).unwrap(), half);
        assert!((s - n as f64).abs() < 1e-8, "N = {n}: {s}");
        let d = integral(|x| density_exact(x, n + 1).unwrap() - density_exact(x, n).unwrap(), half + 1.0);
        assert!((d - 1.0).abs() < 1e-8, "N = {n}: {d}");
    }
}

#[test]
fn semiclassical_density_misses_half_a_particle() {
    for n in [1usize, 10, 1000] {
        let l = fermi_length(n);
        let spec = QuadratureSpec::new(-l, l).panels(64).tol(1e-12, 1e-13);
        let s = quad_integrate(|x| density_semiclassical(x, n), &spec).unwrap().value;
        assert!((s - (n as f64 - 0.5)).abs() < 1e-8, "N = {n}: {s}");
    }
}

#[test]
fn gradient_and_curvature_against_finite_differences() {
    for &(n, x) in &[(5usize, 0.4), (20, 2.2), (60, -7.5)] {
        let g = finite_diff(|y| density_exact(y, n).unwrap(), x, 1, 1e-3).unwrap();
        assert!((g - density_gradient(x, n).unwrap()).abs() < 1e-7);
        let c = finite_diff(|y| density_exact(y, n).unwrap(), x, 2, 1e-2).unwrap();
        assert!((c - density_curvature(x, n).unwrap()).abs() < 1e-5);
    }
}

#[test]
fn numeric_transform_of_exact_density() {
    let n = 20;
    let grid = uniform_grid(-16.0, 16.0, 4001).unwrap();
    let p = density_profile(Method::Exact, n, &grid).unwrap();
    let ks: Vec<f64> = (0..=300).map(|i| 3.0 * fermi_wavenumber(n) * i as f64 / 300.0).collect();
    let ft = numeric_ft(&p, &ks).unwrap();
    assert!(ft.error_estimate < 1e-9);
    for (k, v) in ks.iter().zip(&ft.spectrum.values) {
        assert!((v - ft_exact(*k, n).unwrap()).abs() < 1e-6, "k = {k}");
    }
    assert_eq!(ft_exact(0.0, n).unwrap(), n as f64);
}

// The semiclassical transform could be read with the Bessel argument k L_F
// or k²/2; transforming the semicircle directly decides between them.
#[test]
fn semicircle_transform_fixes_bessel_argument() {
    let n = 20;
    let l = fermi_length(n);
    let spec = QuadratureSpec::new(-l, l).panels(64).tol(1e-12, 1e-12);
    let mut worst_kl: f64 = 0.0;
    let mut worst_quadratic: f64 = 0.0;
    for i in 1..=60 {
        let k = 3.0 * fermi_wavenumber(n) * i as f64 / 60.0;
        let v = numeric_ft_fn(|x| density_semiclassical(x, n), k, &spec).unwrap().value;
        worst_kl = worst_kl.max((v - ft_semiclassical(k, n).unwrap()).abs());
        worst_quadratic = worst_quadratic.max((v - ft_semiclassical_quadratic_argument(k, n).unwrap()).abs());
    }
    assert!(worst_kl < 1e-8, "{worst_kl:e}");
    assert!(worst_quadratic > 0.1, "{worst_quadratic:e}");
}

#[test]
fn fourier_sum_rules() {
    for n in [10usize, 20, 100] {
        let target = 2.0 * fermi_wavenumber(n);
        let sc = ft_sum_rule(n, SpectralMethod::Semiclassical).unwrap();
        assert!((sc - target).abs() < 1e-4 * target, "N = {n}: {sc} vs {target}");
        // The exact transform integrates to 2π n₀(0), which approaches 2k_F
        // only as N grows.
        let ex = ft_sum_rule(n, SpectralMethod::Exact).unwrap();
        let centre = 2.0 * std::f64::consts::PI * density_exact(0.0, n).unwrap();
        assert!((ex - centre).abs() < 1e-9 * centre);
    }
}

#[test]
fn momentum_density_scaling_is_bit_identical() {
    for &alpha in &[0.25, 0.5, 1.0, 2.0, 8.0] {
        for &k in &[-3.7, 0.0, 0.4, 5.5, 11.0] {
            for n in [1usize, 9, 40] {
                let p = momentum_density_scaled(k, n, alpha).unwrap();
                let n_pos = density_exact_scaled(k / (alpha * alpha), n, alpha).unwrap();
                assert_eq!(alpha * alpha * p, n_pos);
            }
        }
    }
}

#[test]
fn momentum_density_normalised() {
    for n in [3usize, 50] {
        let s = integral(|k| momentum_density_scaled(k, n, 1.0).unwrap(), fermi_wavenumber(n) + 12.0);
        assert!((s - n as f64).abs() < 1e-8);
    }
}

#[test]
fn correlator_error_shrinks_as_inverse_root_n() {
    let err = |n: usize| {
        (0..=450)
            .map(|i| 0.05 + 0.45 * i as f64 / 450.0)
            .map(|x| (correlator_centered(x, n).unwrap() - correlator_asymptotic(x, n).unwrap()).abs())
            .fold(0.0f64, f64::max)
    };
    let r = err(100) / err(400);
    assert!((r - 2.0).abs() <= 0.6, "{r}");
}

#[test]
fn rescaled_density_matches_mode_propagation() {
    for n in [1usize, 4, 10] {
        for t in [0.5f64, 1.0, 2.0] {
            let b = t.hypot(1.0);
            let half = (fermi_length(n) + 8.0) * b;
            let grid = uniform_grid(-half, half, 121).unwrap();
            let p = propagate_numeric(&grid, t, n).unwrap();
            let peak = p.profile.values.iter().fold(0.0f64, |m, v| m.max(*v));
            for (x, v) in grid.iter().zip(&p.profile.values) {
                let e = density_expanded(*x, t, n).unwrap();
                assert!((v - e).abs() <= 1e-8 * peak, "N = {n}, t = {t}, x = {x}");
            }
        }
    }
}

#[test]
fn propagated_norm_is_conserved() {
    let n = 6;
    for t in [0.5f64, 1.0, 2.0] {
        let b = t.hypot(1.0);
        let half = (fermi_length(n) + 8.0) * b;
        let grid = uniform_grid(-half, half, 601).unwrap();
        let p = propagate_numeric(&grid, t, n).unwrap();
        let h = grid[1] - grid[0];
        let s: f64 = p.profile.values.iter().sum::<f64>() * h;
        assert!((s - n as f64).abs() < 1e-6, "t = {t}: {s}");
    }
}

#[test]
fn expanded_transform_matches_numeric_transform() {
    let n = 8;
    for t in [0.5f64, 2.0] {
        let b = t.hypot(1.0);
        let half = (fermi_length(n) + 10.0) * b;
        let grid = uniform_grid(-half, half, 4001).unwrap();
        let vals: Vec<f64> = grid.iter().map(|&x| density_expanded(x, t, n).unwrap()).collect();
        let p = fermi1d::density::Profile::new(
            grid,
            vals,
            fermi1d::density::ProfileMeta {
                n,
                method: Method::Expanded,
                generated_by: "test".into(),
                alpha: 1.0,
                axis: fermi1d::density::Axis::Position,
            },
        )
        .unwrap();
        let ks: Vec<f64> = (0..=100).map(|i| 3.0 * fermi_wavenumber(n) / b * i as f64 / 100.0).collect();
        let ft = numeric_ft(&p, &ks).unwrap();
        for (k, v) in ks.iter().zip(&ft.spectrum.values) {
            assert!((v - ft_expanded(*k, t, n).unwrap()).abs() < 1e-6, "t = {t}, k = {k}");
        }
    }
}

#[test]
fn friedel_wavenumber_follows_the_expansion() {
    for t in [0.0, 1.0, 3.0] {
        let r = friedel_stretch(t, 50).unwrap();
        assert!((r.wavenumber - r.expected).abs() <= r.bin_width, "t = {t}: {r:?}");
    }
}

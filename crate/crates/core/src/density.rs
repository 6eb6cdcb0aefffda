//! Position-space densities of N fermions filling the lowest N oscillator
//! levels. Positions are dimensionless (x = αz) and densities are in units
//! of α.

use crate::error::{Error, Result};
use crate::model::{fermi_length, fermi_wavenumber};
use crate::specfun::airy::airy_pair;
use crate::specfun::{osc_psi, osc_psi_tail};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    DirectSum,
    Semiclassical,
    AiryUniform,
    Edge,
    Bulk,
    Box,
    Expanded,
    Propagated,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::DirectSum => "direct-sum",
            Method::Semiclassical => "semiclassical",
            Method::AiryUniform => "airy-uniform",
            Method::Edge => "edge",
            Method::Bulk => "bulk",
            Method::Box => "box",
            Method::Expanded => "expanded",
            Method::Propagated => "propagated",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        const ALL: [Method; 9] = [
            Method::Exact,
            Method::DirectSum,
            Method::Semiclassical,
            Method::AiryUniform,
            Method::Edge,
            Method::Bulk,
            Method::Box,
            Method::Expanded,
            Method::Propagated,
        ];
        ALL.into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method '{s}'")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    Position,
    Wavenumber,
    Time,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileMeta {
    pub n: usize,
    pub method: Method,
    pub generated_by: String,
    pub alpha: f64,
    pub axis: Axis,
}

/// A sampled real curve on a strictly ascending grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: ProfileMeta,
}

impl Profile {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, meta: ProfileMeta) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Domain(format!(
                "grid has {} points but {} values were given",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("profile grid must be strictly ascending".into()));
        }
        Ok(Self { grid, values, meta })
    }
}

pub(crate) fn generated_by() -> String {
    format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"))
}

/// `points` equally spaced values from `min` to `max`; mirror-symmetric
/// bit for bit when `min = −max`.
pub fn uniform_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 points, got {points}")));
    }
    if !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(Error::Domain(format!("grid bounds [{min}, {max}] invalid")));
    }
    let d = (points - 1) as f64;
    Ok((0..points)
        .map(|i| (min * (points - 1 - i) as f64 + max * i as f64) / d)
        .collect())
}

/// Validity windows of the asymptotic formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityWindows {
    /// Bulk formula is used for |x| ≤ bulk_fraction · L_F.
    pub bulk_fraction: f64,
    /// Edge formula accepts L_F − |x| = f / N^{1/6} with 0 ≤ f ≤ edge_f_max.
    pub edge_f_max: f64,
    /// Oscillation split needs L_F − |x| ≥ split_margin / N^{1/6}.
    pub split_margin: f64,
}

impl Default for DensityWindows {
    fn default() -> Self {
        Self {
            bulk_fraction: 0.2,
            edge_f_max: 10.0,
            split_margin: 10.0,
        }
    }
}

fn require_particles(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("particle number must be at least 1".into()));
    }
    Ok(())
}

/// n₀(x, N) = N ψ²_{N−1} − √(N(N−1)) ψ_N ψ_{N−2}; ψ_0² for N = 1.
pub fn density_exact(x: f64, n: usize) -> Result<f64> {
    require_particles(n)?;
    if n == 1 {
        return Ok(osc_psi(0, x)?.powi(2));
    }
    let [pm2, pm1, p] = osc_psi_tail::<3>(n, x)?;
    let nf = n as f64;
    Ok(nf * pm1 * pm1 - (nf * (nf - 1.0)).sqrt() * p * pm2)
}

/// Density in physical units for inverse oscillator length α: α n₀(αz).
pub fn density_exact_scaled(z: f64, n: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("alpha must be positive and finite, got {alpha}")));
    }
    Ok(alpha * density_exact(alpha * z, n)?)
}

/// The equivalent form N ψ_N² − √(N(N+1)) ψ_{N+1} ψ_{N−1}.
pub fn density_exact_upper(x: f64, n: usize) -> Result<f64> {
    require_particles(n)?;
    let [pm1, p, pp1] = osc_psi_tail::<3>(n + 1, x)?;
    let nf = n as f64;
    Ok(nf * p * p - (nf * (nf + 1.0)).sqrt() * pp1 * pm1)
}

/// Σ_{n<N} ψ_n²(x).
pub fn density_direct_sum(x: f64, n: usize) -> Result<f64> {
    require_particles(n)?;
    if n > 100_000 {
        return Err(Error::Capability(format!("direct sum limited to N ≤ 100000, got {n}")));
    }
    let b = crate::specfun::osc_psi_batch(n - 1, x)?;
    Ok(b.values.iter().map(|v| v * v).sum())
}

/// ∂n₀/∂x = −√(2N) ψ_N ψ_{N−1}.
pub fn density_gradient(x: f64, n: usize) -> Result<f64> {
    require_particles(n)?;
    let [pm1, p] = osc_psi_tail::<2>(n, x)?;
    Ok(-((2 * n) as f64).sqrt() * p * pm1)
}

/// ∂²n₀/∂x² = 2N (ψ_N² − ψ²_{N−1}).
pub fn density_curvature(x: f64, n: usize) -> Result<f64> {
    require_particles(n)?;
    let [pm1, p] = osc_psi_tail::<2>(n, x)?;
    Ok(2.0 * n as f64 * (p * p - pm1 * pm1))
}

/// (k_F/π) √(1 − (x/L_F)²) inside the classical region, zero outside.
pub fn density_semiclassical(x: f64, n: usize) -> f64 {
    let l = fermi_length(n);
    let u = x / l;
    if u.abs() >= 1.0 {
        return 0.0;
    }
    fermi_wavenumber(n) / PI * ((1.0 - u) * (1.0 + u)).sqrt()
}

/// Angle φ_n with cos φ_n = |x|/L_n and the map t_n(x):
/// −t_n = [(3/2)(n/2 + 1/4)(2φ − sin 2φ)]^{2/3}.
/// Also returns (−t_n)^{1/4}/√(sin φ_n), finite at φ = 0.
fn uniform_map(n: usize, x: f64) -> (f64, f64) {
    let ln = ((2 * n + 1) as f64).sqrt();
    let u = (x.abs() / ln).min(1.0);
    // arccos without the loss of accuracy near u = 1
    let phi = 2.0 * ((1.0 - u) * 0.5).sqrt().asin();
    let h = if phi < 0.1 {
        let y = 2.0 * phi;
        let y2 = y * y;
        // y − sin y
        let mut term = y * y2 / 6.0;
        let mut sum = term;
        let mut k = 2.0;
        loop {
            term *= -y2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
            k += 1.0;
        }
        sum
    } else {
        2.0 * phi - (2.0 * phi).sin()
    };
    let nu = n as f64 + 0.5;
    let minus_t = (0.75 * nu * h).powf(2.0 / 3.0);
    let ratio = if phi == 0.0 {
        nu.powf(1.0 / 6.0)
    } else {
        minus_t.sqrt().sqrt() / phi.sin().sqrt()
    };
    (-minus_t, ratio)
}

/// Uniform Airy approximation of the density for |x| ≤ L_{N−2}.
pub fn density_airy_uniform(x: f64, n: usize) -> Result<f64> {
    if n < 20 {
        return Err(Error::Domain(format!("uniform Airy density needs N ≥ 20, got {n}")));
    }
    let l_inner = ((2 * n - 3) as f64).sqrt();
    if !(x.abs() <= l_inner) {
        return Err(Error::Domain(format!(
            "uniform Airy density defined for |x| ≤ L_(N-2) = {l_inner}, got {x}"
        )));
    }
    let (t0, r0) = uniform_map(n - 2, x);
    let (t1, r1) = uniform_map(n - 1, x);
    let (t2, r2) = uniform_map(n, x);
    let a0 = airy_pair(t0).0;
    let a1 = airy_pair(t1).0;
    let a2 = airy_pair(t2).0;
    let nf = n as f64;
    let kf = fermi_wavenumber(n);
    Ok(kf * ((1.0 + 0.75 / nf) * r1 * r1 * a1 * a1 - (1.0 + 0.25 / nf) * r2 * r0 * a2 * a0))
}

/// t_{N−1}(x) of the uniform map.
pub fn edge_variable(x: f64, n: usize) -> f64 {
    uniform_map(n - 1, x).0
}

/// Edge density √2 N^{1/6} (Ai′(t)² − t Ai(t)²), t = t_{N−1}(x).
pub fn density_edge(x: f64, n: usize) -> Result<f64> {
    density_edge_with(x, n, &DensityWindows::default())
}

pub fn density_edge_with(x: f64, n: usize, w: &DensityWindows) -> Result<f64> {
    require_particles(n)?;
    let n16 = (n as f64).powf(1.0 / 6.0);
    let f = (fermi_length(n) - x.abs()) * n16;
    if !(f >= 0.0 && f <= w.edge_f_max) {
        return Err(Error::Domain(format!(
            "edge density needs 0 ≤ (L_F − |x|) N^(1/6) ≤ {}, got {f}",
            w.edge_f_max
        )));
    }
    let t = edge_variable(x, n);
    let (ai, aip) = airy_pair(t);
    Ok(SQRT_2 * n16 * (aip * aip - t * ai * ai))
}

/// Central density k_F/π + (1 − (−1)^N cos 2k_F x)/(2π L_F).
pub fn density_bulk(x: f64, n: usize) -> Result<f64> {
    density_bulk_with(x, n, &DensityWindows::default())
}

pub fn density_bulk_with(x: f64, n: usize, w: &DensityWindows) -> Result<f64> {
    require_particles(n)?;
    let l = fermi_length(n);
    if !(x.abs() <= w.bulk_fraction * l) {
        return Err(Error::Domain(format!(
            "bulk density needs |x| ≤ {} L_F = {}, got {x}",
            w.bulk_fraction,
            w.bulk_fraction * l
        )));
    }
    let kf = fermi_wavenumber(n);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(kf / PI + (1.0 - sign * (2.0 * kf * x).cos()) / (2.0 * PI * l))
}

/// Slowly varying background and oscillating part of the density away
/// from the edges.
pub fn density_oscillation_split(x: f64, n: usize) -> Result<(f64, f64)> {
    density_oscillation_split_with(x, n, &DensityWindows::default())
}

pub fn density_oscillation_split_with(x: f64, n: usize, w: &DensityWindows) -> Result<(f64, f64)> {
    require_particles(n)?;
    let l = fermi_length(n);
    let margin = w.split_margin / (n as f64).powf(1.0 / 6.0);
    if !(l - x.abs() >= margin) {
        return Err(Error::Domain(format!(
            "oscillation split needs L_F − |x| ≥ {margin}, got {}",
            l - x.abs()
        )));
    }
    let u = x / l;
    let s = ((1.0 - u) * (1.0 + u)).sqrt();
    let background = density_semiclassical(x, n) + 1.0 / (2.0 * PI * l * s);
    let phase = (2 * n - 1) as f64 * (s * u - u.acos());
    Ok((background, -phase.sin() / (2.0 * PI * l * s)))
}

/// Envelope 1/(2π L_F √(1 − (x/L_F)²)) of the oscillating part.
pub fn oscillation_envelope(x: f64, n: usize) -> f64 {
    let l = fermi_length(n);
    let u = x / l;
    1.0 / (2.0 * PI * l * ((1.0 - u) * (1.0 + u)).sqrt())
}

/// N fermions in a box [0, L] with hard walls, large-N form.
pub fn box_density(x: f64, n: usize, l: f64) -> Result<f64> {
    require_particles(n)?;
    if !(x > 0.0 && x < l) {
        return Err(Error::Domain(format!("box density needs 0 < x < {l}, got {x}")));
    }
    let k0 = PI * n as f64 / l;
    let cot = 1.0 / (PI * x / l).tan();
    Ok(k0 / PI * (1.0 - cot * (2.0 * k0 * x).sin() / (2.0 * n as f64)))
}

/// Evaluates a density method on a grid, in parallel, in grid order.
pub fn density_profile(method: Method, n: usize, grid: &[f64]) -> Result<Profile> {
    density_profile_with(method, n, grid, &DensityWindows::default())
}

pub fn density_profile_with(
    method: Method,
    n: usize,
    grid: &[f64],
    w: &DensityWindows,
) -> Result<Profile> {
    require_particles(n)?;
    let eval = |x: f64| -> Result<f64> {
        match method {
            Method::Exact => density_exact(x, n),
            Method::DirectSum => density_direct_sum(x, n),
            Method::Semiclassical => Ok(density_semiclassical(x, n)),
            Method::AiryUniform => density_airy_uniform(x, n),
            Method::Edge => density_edge_with(x, n, w),
            Method::Bulk => density_bulk_with(x, n, w),
            Method::Box => box_density(x, n, 2.0 * fermi_length(n)),
            Method::Expanded | Method::Propagated => Err(Error::Domain(format!(
                "method {method} needs a time argument; use the expansion module"
            ))),
        }
    };
    let values = grid.par_iter().map(|&x| eval(x)).collect::<Result<Vec<_>>>()?;
    Profile::new(
        grid.to_vec(),
        values,
        ProfileMeta {
            n,
            method,
            generated_by: generated_by(),
            alpha: 1.0,
            axis: Axis::Position,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

    #[test]
    fn ground_state_density() {
        assert!((density_exact(0.0, 1).unwrap() - FRAC_1_SQRT_PI).abs() < 1e-15);
        assert!((density_exact(0.0, 2).unwrap() - FRAC_1_SQRT_PI).abs() < 1e-15);
        assert!((density_direct_sum(0.0, 1).unwrap() - FRAC_1_SQRT_PI).abs() < 1e-15);
    }

    #[test]
    fn exact_matches_direct_sum() {
        let e = density_exact(1.3, 7).unwrap();
        let d = density_direct_sum(1.3, 7).unwrap();
        assert!((e - d).abs() < 1e-12);
        for n in 1..=50 {
            for &x in &[-6.1, -0.2, 0.0, 2.9, 9.5] {
                let e = density_exact(x, n).unwrap();
                assert!((e - density_direct_sum(x, n).unwrap()).abs() < 1e-12);
                assert!((e - density_exact_upper(x, n).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gradient_and_curvature() {
        for n in 1..12 {
            assert_eq!(density_gradient(0.0, n).unwrap(), 0.0);
        }
        let h = 1e-4;
        let fd = (density_exact(0.7 + h, 9).unwrap() - density_exact(0.7 - h, 9).unwrap()) / (2.0 * h);
        assert!((density_gradient(0.7, 9).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn semiclassical_values() {
        let kf = fermi_wavenumber(30);
        assert_eq!(density_semiclassical(0.0, 30), kf / PI);
        assert_eq!(density_semiclassical(fermi_length(30), 30), 0.0);
        assert_eq!(density_semiclassical(100.0, 30), 0.0);
    }

    #[test]
    fn airy_uniform_tracks_exact() {
        let c = density_exact(0.0, 100).unwrap();
        let a = density_airy_uniform(0.0, 100).unwrap();
        assert!((a - c).abs() < 5e-3 * c, "{a} vs {c}");
        let x = 0.9 * fermi_length(100);
        let c = density_exact(x, 100).unwrap();
        let a = density_airy_uniform(x, 100).unwrap();
        assert!((a - c).abs() < 1e-2 * c, "{a} vs {c}");
    }

    #[test]
    fn airy_uniform_window() {
        let l_inner = (197f64).sqrt();
        assert!(density_airy_uniform(l_inner, 100).unwrap().is_finite());
        assert!(matches!(density_airy_uniform(l_inner + 1e-9, 100), Err(Error::Domain(_))));
        assert!(matches!(density_airy_uniform(0.0, 19), Err(Error::Domain(_))));
    }

    #[test]
    fn uniform_map_vanishes_at_turning_point() {
        let (t, r) = uniform_map(40, 81f64.sqrt());
        assert_eq!(t, 0.0);
        assert!((r - 40.5f64.powf(1.0 / 6.0)).abs() < 1e-14);
    }

    #[test]
    fn edge_density_at_last_maximum() {
        let n = 2000;
        let at_max = SQRT_2 * crate::specfun::airy_ai_prime(crate::specfun::AIRY_A1).unwrap().powi(2);
        assert!((at_max - 0.6954).abs() < 1e-3);
        assert!(density_edge(fermi_length(n) + 0.01, n).is_err());
        assert!(density_edge(fermi_length(n) - 20.0, n).is_err());
        assert!(density_edge(fermi_length(n), n).unwrap() > 0.0);
    }

    #[test]
    fn bulk_at_origin() {
        let kf = fermi_wavenumber(10);
        assert!((density_bulk(0.0, 10).unwrap() - kf / PI).abs() < 1e-15);
        let kf = fermi_wavenumber(11);
        let l = fermi_length(11);
        assert!((density_bulk(0.0, 11).unwrap() - (kf / PI + 1.0 / (PI * l))).abs() < 1e-15);
        assert!(density_bulk(0.5 * l, 11).is_err());
    }

    #[test]
    fn bulk_matches_exact_near_centre() {
        // Beyond |x| ≈ 1.4 the neglected curvature k_F x²/(2π L_F²) of the
        // semicircle alone exceeds this bound.
        let n = 200;
        let l = fermi_length(n);
        let grid = uniform_grid(-1.0, 1.0, 401).unwrap();
        for &x in &grid {
            let d = (density_bulk(x, n).unwrap() - density_exact(x, n).unwrap()).abs();
            assert!(d <= 2.0 / (2.0 * PI * l), "x={x} d={d}");
        }
    }

    #[test]
    fn oscillation_split_sums_to_exact() {
        let n = 100;
        let x = 0.5 * fermi_length(n);
        let (b, o) = density_oscillation_split(x, n).unwrap();
        assert!((b + o - density_exact(x, n).unwrap()).abs() < 1e-3 * fermi_wavenumber(n));
        for n in [20, 21] {
            let (b, o) = density_oscillation_split(0.0, n).unwrap();
            assert!((b + o - density_bulk(0.0, n).unwrap()).abs() < 1e-12);
        }
        assert!(density_oscillation_split(fermi_length(n) - 0.1, n).is_err());
    }

    #[test]
    fn box_density_midpoint_and_walls() {
        let l = 7.0;
        let k0 = PI * 10.0 / l;
        assert!((box_density(l / 2.0, 10, l).unwrap() - k0 / PI).abs() < 1e-12);
        assert!(box_density(0.0, 10, l).is_err());
        assert!(box_density(l, 10, l).is_err());
    }

    #[test]
    fn profile_requires_ascending_grid() {
        assert!(density_profile(Method::Exact, 3, &[0.0, 0.0]).is_err());
        let p = density_profile(Method::Exact, 3, &[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.values[0], p.values[2]);
    }

    #[test]
    fn symmetric_grid_is_mirror_exact() {
        let g = uniform_grid(-3.3, 3.3, 201).unwrap();
        for i in 0..g.len() {
            assert_eq!(g[i], -g[g.len() - 1 - i]);
        }
        assert_eq!(g[100], 0.0);
    }
}

//! Independent brute-force validators: adaptive quadrature, numerical
//! Fourier transforms, finite differences, the Christoffel–Darboux kernel
//! and the frozen extended-precision reference corpus.

pub mod quad;
pub mod reference;

use crate::density::{Axis, Profile};
use crate::error::{Error, Result};
use crate::spectral::{SpectralMethod, SpectralProfile};
use crate::specfun::{osc_psi_batch, osc_psi_tail};
use quad::{quad_integrate, QuadResult, QuadratureSpec};
use rayon::prelude::*;

pub use quad::{GaussLegendre, QuadratureSpec as Spec};
pub use reference::{evaluate_row, parse_corpus, row_passes, write_corpus, ReferenceRow};

/// A numerical transform together with its largest per-point error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericFt {
    pub spectrum: SpectralProfile,
    pub error_estimate: f64,
}

fn trapezoid_cos(grid: &[f64], values: &[f64], k: f64, stride: usize) -> f64 {
    let idx: Vec<usize> = (0..grid.len()).step_by(stride).collect();
    let mut s = 0.0;
    for w in idx.windows(2) {
        let (i, j) = (w[0], w[1]);
        let h = grid[j] - grid[i];
        s += 0.5 * h * (values[i] * (k * grid[i]).cos() + values[j] * (k * grid[j]).cos());
    }
    s
}

/// Re ∫ dx e^{ikx} n(x) of a sampled profile by the trapezoidal rule.
///
/// On a uniform grid with a profile that has decayed at both ends the rule
/// converges spectrally; the error estimate is the change against the
/// half-resolution rule (every other sample).
pub fn numeric_ft(profile: &Profile, k_grid: &[f64]) -> Result<NumericFt> {
    if profile.meta.axis != Axis::Position {
        return Err(Error::Domain("numeric transform needs a position-space profile".into()));
    }
    let g = &profile.grid;
    let v = &profile.values;
    if g.len() < 5 || g.len().is_multiple_of(2) {
        return Err(Error::Domain(
            "numeric transform needs an odd number (≥ 5) of samples".into(),
        ));
    }
    let edge = v[0].abs().max(v[v.len() - 1].abs());
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if edge > 1e-10 * peak.max(1e-300) {
        return Err(Error::Domain(format!(
            "profile has not decayed at the grid ends ({edge:e} vs peak {peak:e})"
        )));
    }
    let pairs: Vec<(f64, f64)> = k_grid
        .par_iter()
        .map(|&k| {
            let fine = trapezoid_cos(g, v, k, 1);
            let coarse = trapezoid_cos(g, v, k, 2);
            (fine, (fine - coarse).abs())
        })
        .collect();
    let values = pairs.iter().map(|p| p.0).collect();
    let error_estimate = pairs.iter().fold(0.0f64, |m, p| m.max(p.1));
    Ok(NumericFt {
        spectrum: SpectralProfile::build(
            profile.meta.n,
            SpectralMethod::NumericOracle,
            k_grid.to_vec(),
            values,
        ),
        error_estimate,
    })
}

/// Re ∫_{lo}^{hi} f(x) e^{ikx} dx by adaptive quadrature.
pub fn numeric_ft_fn<F: Fn(f64) -> f64>(f: F, k: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    quad_integrate(|x| f(x) * (k * x).cos(), spec)
}

/// Centered finite difference of order 1 or 2 with one Richardson step.
pub fn finite_diff<F: Fn(f64) -> f64>(f: F, x: f64, order: u32, h: f64) -> Result<f64> {
    let d = |h: f64| match order {
        1 => Ok((f(x + h) - f(x - h)) / (2.0 * h)),
        2 => Ok((f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)),
        _ => Err(Error::Domain(format!("finite difference order {order} not supported"))),
    };
    let coarse = d(h)?;
    let fine = d(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Σ_{m≤n} ψ_m(z1) ψ_m(z2) via the Christoffel–Darboux formula, switching
/// to the diagonal limit when |z1 − z2| < 1e-8.
pub fn christoffel_darboux(z1: f64, z2: f64, n: usize) -> Result<f64> {
    if n > 10_000 {
        return Err(Error::Capability(format!("kernel limited to n ≤ 10000, got {n}")));
    }
    let c = ((n + 1) as f64 / 2.0).sqrt();
    if (z1 - z2).abs() < 1e-8 {
        let z = 0.5 * (z1 + z2);
        return crate::density::density_exact(z, n + 1);
    }
    let [a0, a1] = osc_psi_tail::<2>(n + 1, z1)?;
    let [b0, b1] = osc_psi_tail::<2>(n + 1, z2)?;
    Ok(c * (a1 * b0 - a0 * b1) / (z1 - z2))
}

/// The literal sum Σ_{m≤n} ψ_m(z1) ψ_m(z2).
pub fn kernel_direct_sum(z1: f64, z2: f64, n: usize) -> Result<f64> {
    let a = osc_psi_batch(n, z1)?;
    let b = osc_psi_batch(n, z2)?;
    Ok(a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum())
}

//! Free expansion after the trap is switched off at t = 0 (time in units
//! of 1/ω). The density keeps its shape and stretches by b(t) = √(1 + t²).

use crate::analysis::{friedel_report, FriedelReport};
use crate::density::{density_exact, generated_by, Axis, Method, Profile, ProfileMeta};
use crate::error::{Error, Result};
use crate::oracle::quad::GaussLegendre;
use crate::specfun::osc_psi_batch;
use crate::spectral::ft_exact;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionSnapshot {
    pub t: f64,
    pub b: f64,
    pub profile: Profile,
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("expansion time must be finite and ≥ 0, got {t}")));
    }
    Ok(())
}

/// b(t) = √(1 + t²).
pub fn scale_factor(t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(t.hypot(1.0))
}

/// n(x, t) = n₀(x/b, N)/b.
pub fn density_expanded(x: f64, t: f64, n: usize) -> Result<f64> {
    let b = scale_factor(t)?;
    Ok(density_exact(x / b, n)? / b)
}

/// Fourier transform of the expanded density: Fn₀(k b, N).
pub fn ft_expanded(k: f64, t: f64, n: usize) -> Result<f64> {
    let b = scale_factor(t)?;
    ft_exact(k * b, n)
}

pub fn expansion_snapshot(n: usize, t: f64, grid: &[f64]) -> Result<ExpansionSnapshot> {
    let b = scale_factor(t)?;
    let values = grid
        .par_iter()
        .map(|&x| density_expanded(x, t, n))
        .collect::<Result<Vec<_>>>()?;
    let profile = Profile::new(
        grid.to_vec(),
        values,
        ProfileMeta {
            n,
            method: Method::Expanded,
            generated_by: generated_by(),
            alpha: 1.0,
            axis: Axis::Position,
        },
    )?;
    Ok(ExpansionSnapshot { t, b, profile })
}

/// Result of the brute-force propagation together with its error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub profile: Profile,
    /// Largest change of any density sample between P and 2P panels.
    pub error_estimate: f64,
}

/// Composite Gauss–Legendre nodes and weights over [−K, K].
fn nodes(k_max: f64, panels: usize, rule: &GaussLegendre) -> (Vec<f64>, Vec<f64>) {
    let w = 2.0 * k_max / panels as f64;
    let mut xs = Vec::with_capacity(panels * rule.nodes.len());
    let mut ws = Vec::with_capacity(panels * rule.nodes.len());
    for p in 0..panels {
        let c = -k_max + (p as f64 + 0.5) * w;
        for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
            xs.push(c + 0.5 * w * x);
            ws.push(0.5 * w * wt);
        }
    }
    (xs, ws)
}

/// Σ_{m<N} |ψ_m(x, t)|² on the grid, where each mode is propagated freely
/// from its momentum representation:
/// ψ_m(x, t) ∝ (2π)^{-1/2} ∫ dκ ψ_m(κ) e^{i(κx − κ²t/2)}.
fn propagate_with(grid: &[f64], t: f64, n: usize, panels: usize) -> Result<Vec<f64>> {
    let k_max = ((2 * n + 1) as f64).sqrt() + 9.0;
    let rule = GaussLegendre::new(20);
    let (ks, ws) = nodes(k_max, panels, &rule);
    // Mode amplitudes at the nodes, weight folded in, shared by every x.
    let amps: Vec<Vec<f64>> = ks
        .par_iter()
        .zip(&ws)
        .map(|(&k, &w)| {
            osc_psi_batch(n - 1, k).map(|b| b.values.into_iter().map(|v| v * w).collect())
        })
        .collect::<Result<_>>()?;
    let norm = 1.0 / (2.0 * std::f64::consts::PI);
    Ok(grid
        .par_iter()
        .map(|&x| {
            let mut re = vec![0.0; n];
            let mut im = vec![0.0; n];
            for (k, a) in ks.iter().zip(&amps) {
                let (s, c) = (k * x - 0.5 * k * k * t).sin_cos();
                for m in 0..n {
                    re[m] += a[m] * c;
                    im[m] += a[m] * s;
                }
            }
            norm * re.iter().zip(&im).map(|(r, i)| r * r + i * i).sum::<f64>()
        })
        .collect())
}

/// Brute-force validator of the rescaling law. The panel count follows the
/// largest phase rate |x| + K t over the grid and is doubled once to
/// estimate the quadrature error.
pub fn propagate_numeric(x_grid: &[f64], t: f64, n: usize) -> Result<Propagation> {
    check_time(t)?;
    if !(1..=50).contains(&n) {
        return Err(Error::Domain(format!("propagation oracle supports 1 ≤ N ≤ 50, got {n}")));
    }
    let k_max = ((2 * n + 1) as f64).sqrt() + 9.0;
    let x_max = x_grid.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let rate = x_max + k_max * t + k_max;
    let panels = ((2.0 * k_max * rate / 2.0).ceil() as usize).max(16);
    let coarse = propagate_with(x_grid, t, n, panels)?;
    let fine = propagate_with(x_grid, t, n, 2 * panels)?;
    let error_estimate = coarse
        .iter()
        .zip(&fine)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let peak = fine.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(error_estimate <= 1e-10 * peak.max(1e-300)) {
        return Err(Error::NonConvergence {
            what: format!("mode propagation at t = {t}"),
            best: peak,
            error_estimate,
        });
    }
    let profile = Profile::new(
        x_grid.to_vec(),
        fine,
        ProfileMeta {
            n,
            method: Method::Propagated,
            generated_by: generated_by(),
            alpha: 1.0,
            axis: Axis::Position,
        },
    )?;
    Ok(Propagation {
        profile,
        error_estimate,
    })
}

/// Central Friedel wavenumber of the expanded cloud, expected 2k_F/b(t).
pub fn friedel_stretch(t: f64, n: usize) -> Result<FriedelReport> {
    friedel_report(n, scale_factor(t)?)
}

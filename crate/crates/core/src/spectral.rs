//! Fourier transform of the density, Fn(k) = ∫ dx e^{ikx} n(x), in units
//! where α = 1.

use crate::density::generated_by;
use crate::error::{Error, Result};
use crate::model::{fermi_length, fermi_wavenumber};
use crate::oracle::quad::{quad_integrate, QuadratureSpec};
use crate::specfun::{bessel_j1, laguerre_weighted};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    Exact,
    Semiclassical,
    NumericOracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMeta {
    pub n: usize,
    pub method: SpectralMethod,
    pub generated_by: String,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub k_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: SpectralMeta,
}

impl SpectralProfile {
    pub(crate) fn build(n: usize, method: SpectralMethod, k_grid: Vec<f64>, values: Vec<f64>) -> Self {
        Self {
            k_grid,
            values,
            meta: SpectralMeta {
                n,
                method,
                generated_by: generated_by(),
                alpha: 1.0,
            },
        }
    }
}

/// e^{−k²/4} L^{(1)}_{N−1}(k²/2).
pub fn ft_exact(k: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("particle number must be at least 1".into()));
    }
    if !k.is_finite() {
        return Err(Error::Domain(format!("non-finite wavenumber {k}")));
    }
    laguerre_weighted(n - 1, 1.0, 0.5 * k * k)
}

/// (k_F/k) J1(k L_F), with the limit N − 1/2 at k = 0.
pub fn ft_semiclassical(k: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("particle number must be at least 1".into()));
    }
    if k == 0.0 {
        return Ok(n as f64 - 0.5);
    }
    let kf = fermi_wavenumber(n);
    let l = fermi_length(n);
    Ok(kf / k.abs() * bessel_j1(k.abs() * l)?)
}

/// Transform with the Bessel argument k²/2 in place of k L_F. Kept only so
/// the two candidate forms can be compared against a numerical transform.
pub fn ft_semiclassical_quadratic_argument(k: f64, n: usize) -> Result<f64> {
    let kf = fermi_wavenumber(n);
    if k == 0.0 {
        return Ok(0.0);
    }
    Ok(kf / k.abs() * bessel_j1(0.5 * k * k)?)
}

pub fn spectral_profile(method: SpectralMethod, n: usize, k_grid: &[f64]) -> Result<SpectralProfile> {
    let values = k_grid
        .par_iter()
        .map(|&k| match method {
            SpectralMethod::Exact => ft_exact(k, n),
            SpectralMethod::Semiclassical => ft_semiclassical(k, n),
            SpectralMethod::NumericOracle => Err(Error::Domain(
                "numeric transforms are produced by the oracle module".into(),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralProfile::build(n, method, k_grid.to_vec(), values))
}

/// Default wavenumber grid: 512 points over [0, 3k_F].
pub fn default_k_grid(n: usize) -> Vec<f64> {
    let kmax = 3.0 * fermi_wavenumber(n);
    (0..512).map(|i| kmax * i as f64 / 511.0).collect()
}

/// ∫_{−∞}^{∞} dk Fn(k, N).
pub fn ft_sum_rule(n: usize, method: SpectralMethod) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("particle number must be at least 1".into()));
    }
    let kf = fermi_wavenumber(n);
    match method {
        SpectralMethod::Exact => {
            let kmax = 3.0 * kf + 10.0;
            let spec = QuadratureSpec::new(0.0, kmax)
                .panels(64)
                .tol(1e-13 * kf.max(1.0), 1e-13);
            let r = quad_integrate(|k| ft_exact(k, n).unwrap_or(f64::NAN), &spec)?;
            Ok(2.0 * r.value)
        }
        SpectralMethod::Semiclassical => {
            // Integrate out to s = k L_F = S and add the asymptotic tail
            // 2 k_F ∫_S^∞ J1(s)/s ds ≈ 2 k_F J0(S)/S.
            let l = fermi_length(n);
            let s_max = 2000.0 * std::f64::consts::PI;
            let spec = QuadratureSpec::new(0.0, s_max / l)
                .panels(2000)
                .tol(1e-11 * kf, 1e-12);
            let r = quad_integrate(|k| ft_semiclassical(k, n).unwrap_or(f64::NAN), &spec)?;
            let w = s_max - std::f64::consts::FRAC_PI_4;
            let j0 = (2.0 / (std::f64::consts::PI * s_max)).sqrt()
                * (w.cos() + w.sin() / (8.0 * s_max));
            Ok(2.0 * (r.value + kf * j0 / s_max))
        }
        SpectralMethod::NumericOracle => Err(Error::Domain(
            "sum rule is defined for the exact and semiclassical transforms".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HumpReport {
    pub k_hump: f64,
    pub height: f64,
    /// height / N
    pub height_ratio: f64,
    pub k_fermi: f64,
}

/// The Friedel hump of the exact transform: the outermost local maximum of
/// (−1)^{N+1} Fn₀(k) in (k_F, 2.5 k_F). The semiclassical transform has no
/// counterpart there.
pub fn hump_locate(n: usize) -> Result<HumpReport> {
    if n < 10 {
        return Err(Error::Domain(format!("hump analysis needs N ≥ 10, got {n}")));
    }
    let kf = fermi_wavenumber(n);
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let g = |k: f64| sign * ft_exact(k, n).unwrap_or(f64::NAN);
    let (lo, hi) = (kf, 2.5 * kf);
    let m = 3000;
    let ks: Vec<f64> = (0..=m).map(|i| lo + (hi - lo) * i as f64 / m as f64).collect();
    let vals: Vec<f64> = ks.iter().map(|&k| g(k)).collect();
    let idx = (1..m)
        .rev()
        .find(|&i| vals[i] > vals[i - 1] && vals[i] >= vals[i + 1])
        .ok_or_else(|| Error::NotFound(format!("no hump in (k_F, 2.5 k_F) for N = {n}")))?;
    let k = golden_max(&g, ks[idx - 1], ks[idx + 1]);
    let height = sign * g(k);
    Ok(HumpReport {
        k_hump: k,
        height,
        height_ratio: height / n as f64,
        k_fermi: kf,
    })
}

pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (a.abs() + b.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

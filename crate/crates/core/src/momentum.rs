//! Momentum-space observables. With α = 1 the momentum density has exactly
//! the same functional form as the position density.

use crate::density::{density_exact, density_exact_scaled, generated_by};
use crate::error::{Error, Result};
use crate::model::fermi_wavenumber;
use crate::specfun::laguerre_weighted;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumMeta {
    pub n: usize,
    pub generated_by: String,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumProfile {
    pub k_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: MomentumMeta,
}

/// p₀(k) = n₀(k): the same code path as the position density.
pub fn momentum_density(k: f64, n: usize) -> Result<f64> {
    density_exact(k, n)
}

/// Momentum density for inverse oscillator length α, n(k/α²)/α² with n the
/// physical position density. Equals p₀(k/α)/α.
pub fn momentum_density_scaled(k: f64, n: usize, alpha: f64) -> Result<f64> {
    let a2 = alpha * alpha;
    Ok(density_exact_scaled(k / a2, n, alpha)? / a2)
}

pub fn momentum_profile(n: usize, k_grid: &[f64]) -> Result<MomentumProfile> {
    let values = k_grid
        .par_iter()
        .map(|&k| momentum_density(k, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentumProfile {
        k_grid: k_grid.to_vec(),
        values,
        meta: MomentumMeta {
            n,
            generated_by: generated_by(),
            alpha: 1.0,
        },
    })
}

/// Occupation of the mode with wavenumber k_m = √(2m+1): 1 for m < N, else 0.
/// Only defined on that discrete set.
pub fn momentum_step(k: f64, n: usize) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("{k} is not a mode wavenumber √(2m+1)")));
    }
    let m = ((k * k - 1.0) * 0.5).round();
    if m < 0.0 || (k - (2.0 * m + 1.0).sqrt()).abs() > 1e-9 * k {
        return Err(Error::Domain(format!("{k} is not a mode wavenumber √(2m+1)")));
    }
    Ok(if (m as usize) < n { 1.0 } else { 0.0 })
}

/// Σ_{m<N} ψ_m(x) ψ_m(0) = π^{-1/2} e^{−x²/2} L^{(1/2)}_M(x²), M = ⌊(N−1)/2⌋.
pub fn correlator_centered(x: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("particle number must be at least 1".into()));
    }
    Ok(FRAC_1_SQRT_PI * laguerre_weighted((n - 1) / 2, 0.5, x * x)?)
}

/// sin(k_F x)/(πx), with the limit k_F/π at x = 0.
pub fn correlator_asymptotic(x: f64, n: usize) -> Result<f64> {
    if n < 50 {
        return Err(Error::Domain(format!("asymptotic correlator needs N ≥ 50, got {n}")));
    }
    let kf = fermi_wavenumber(n);
    if x == 0.0 {
        return Ok(kf / std::f64::consts::PI);
    }
    Ok((kf * x).sin() / (std::f64::consts::PI * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::kernel_direct_sum;

    #[test]
    fn ground_state_momentum_density() {
        assert!((momentum_density(0.0, 1).unwrap() - FRAC_1_SQRT_PI).abs() < 1e-15);
    }

    #[test]
    fn isomorphism_is_bit_identical() {
        for &k in &[-3.0, 0.0, 0.37, 8.0] {
            assert_eq!(momentum_density(k, 17).unwrap(), density_exact(k, 17).unwrap());
        }
    }

    #[test]
    fn step_on_mode_grid() {
        assert_eq!(momentum_step(1.0, 5).unwrap(), 1.0);
        assert_eq!(momentum_step(11f64.sqrt(), 5).unwrap(), 0.0);
        assert_eq!(momentum_step(9f64.sqrt(), 5).unwrap(), 1.0);
        assert!(momentum_step(1.5, 5).is_err());
        assert!(momentum_step(0.0, 5).is_err());
    }

    #[test]
    fn correlator_matches_direct_sum() {
        assert!((correlator_centered(0.0, 1).unwrap() - FRAC_1_SQRT_PI).abs() < 1e-15);
        for n in 1..=40 {
            for &x in &[0.0, 0.4, 1.7, 5.0] {
                let c = correlator_centered(x, n).unwrap();
                let d = kernel_direct_sum(x, 0.0, n - 1).unwrap();
                assert!((c - d).abs() < 1e-10, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn correlator_diagonal_is_central_density() {
        for n in [1, 2, 9, 30] {
            let c = correlator_centered(0.0, n).unwrap();
            assert!((c - density_exact(0.0, n).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn asymptotic_correlator_zeros_and_limit() {
        let kf = fermi_wavenumber(60);
        assert_eq!(correlator_asymptotic(0.0, 60).unwrap(), kf / std::f64::consts::PI);
        let z = std::f64::consts::PI / kf;
        assert!(correlator_asymptotic(z, 60).unwrap().abs() < 1e-14);
        assert!(correlator_asymptotic(0.1, 10).is_err());
    }
}

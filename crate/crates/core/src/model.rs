//! Trap parameters and the length, wavenumber and energy scales derived
//! from them. Lengths are in units of 1/α, wavenumbers in units of α and
//! energies in units of ħω.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapParams {
    pub n_particles: usize,
    /// Inverse oscillator length √(mω/ħ).
    pub alpha: f64,
}

impl TrapParams {
    pub fn new(n_particles: usize, alpha: f64) -> Result<Self> {
        if n_particles == 0 {
            return Err(Error::Domain("particle number must be at least 1".into()));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Domain(format!("alpha must be positive and finite, got {alpha}")));
        }
        Ok(Self { n_particles, alpha })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapScales {
    /// k_F = α√(2N−1)
    pub k_fermi: f64,
    /// L_F = √(2N−1)/α
    pub l_fermi: f64,
    /// ε_F/ħω = N − 1/2
    pub e_fermi: f64,
    /// Central density k_F/π.
    pub peak_density: f64,
    /// Semiclassical average k_F/4.
    pub avg_density: f64,
}

pub fn derive_scales(params: &TrapParams) -> TrapScales {
    let (l_fermi, k_fermi) = level_scales(params.n_particles - 1, params.alpha);
    TrapScales {
        k_fermi,
        l_fermi,
        e_fermi: params.n_particles as f64 - 0.5,
        peak_density: k_fermi / std::f64::consts::PI,
        avg_density: k_fermi / 4.0,
    }
}

/// Turning point L_n = √(2n+1)/α and central wavenumber k_n = α√(2n+1) of level n.
pub fn level_scales(n: usize, alpha: f64) -> (f64, f64) {
    let r = ((2 * n + 1) as f64).sqrt();
    (r / alpha, r * alpha)
}

/// Dimensionless k_F = √(2N−1) (α = 1).
pub fn fermi_wavenumber(n: usize) -> f64 {
    ((2 * n).saturating_sub(1) as f64).sqrt()
}

/// Dimensionless L_F = √(2N−1) (α = 1).
pub fn fermi_length(n: usize) -> f64 {
    fermi_wavenumber(n)
}

/// Fermi wavenumber πN/(2L_F) of N fermions in a box of width 2L_F.
pub fn box_fermi_wavenumber(n: usize, l_fermi: f64) -> Result<f64> {
    if !(l_fermi > 0.0 && l_fermi.is_finite()) {
        return Err(Error::Domain(format!("box half-width must be positive, got {l_fermi}")));
    }
    Ok(std::f64::consts::PI * n as f64 / (2.0 * l_fermi))
}

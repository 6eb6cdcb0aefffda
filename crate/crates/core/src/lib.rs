//! One-particle observables of N non-interacting spinless fermions in a
//! one-dimensional harmonic trap at zero temperature.
//!
//! Everything is dimensionless: positions x = αz, wavenumbers in units of α,
//! densities in units of α, energies in units of ħω and times in units of 1/ω.

pub mod analysis;
pub mod cli;
pub mod density;
pub mod error;
pub mod expansion;
pub mod model;
pub mod momentum;
pub mod oracle;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};

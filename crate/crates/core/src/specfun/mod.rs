//! Special functions: oscillator eigenfunctions, Airy, Laguerre and Bessel J1.

pub mod airy;
pub mod bessel;
pub mod ddouble;
pub mod hermite;
pub mod laguerre;

pub use airy::{airy_ai, airy_ai_prime, airy_first_zero, AIRY_A1};
pub use bessel::bessel_j1;
pub use hermite::{osc_psi, osc_psi_batch, osc_psi_deriv, osc_psi_tail, OscEvalBatch, MAX_LEVEL};
pub use laguerre::{laguerre_assoc, laguerre_weighted};

//! Associated Laguerre polynomials L_n^{(a)} for the two superscripts that
//! appear in the Fourier and correlator formulas.
//!
//! Upward recurrence `(k+1) L_{k+1} = (2k+1+a−x) L_k − (k+a) L_{k−1}`.

use super::ddouble::LN_2;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 1_000_000;
const RESCALE_BITS: i32 = 600;
const RESCALE_LIMIT: f64 = 4.149_515_568_880_993e180;

fn check(n: usize, a: f64, x: f64) -> Result<()> {
    if a != 0.5 && a != 1.0 {
        return Err(Error::Capability(format!(
            "Laguerre superscript {a} not supported (only 1/2 and 1)"
        )));
    }
    if n > MAX_DEGREE {
        return Err(Error::Capability(format!(
            "Laguerre degree {n} exceeds supported maximum {MAX_DEGREE}"
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Laguerre argument {x} must be finite and ≥ 0")));
    }
    Ok(())
}

/// Runs the recurrence, returning `L_n^{(a)}(x) = m · 2^e`.
fn scaled(n: usize, a: f64, x: f64) -> (f64, i64) {
    let mut prev = 1.0;
    if n == 0 {
        return (prev, 0);
    }
    let mut cur = 1.0 + a - x;
    let mut exp2 = 0i64;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_LIMIT {
            let f = 2f64.powi(-RESCALE_BITS);
            prev *= f;
            cur *= f;
            exp2 += RESCALE_BITS as i64;
        }
    }
    (cur, exp2)
}

/// L_n^{(a)}(x) with a ∈ {1/2, 1}. Overflows to ±∞ only when the true value does.
pub fn laguerre_assoc(n: usize, a: f64, x: f64) -> Result<f64> {
    check(n, a, x)?;
    let (m, e) = scaled(n, a, x);
    Ok(if e == 0 { m } else { m * 2f64.powi(e as i32) })
}

/// e^{−x/2} L_n^{(a)}(x), finite for arguments where the bare polynomial
/// overflows. Exact at x = 0.
pub fn laguerre_weighted(n: usize, a: f64, x: f64) -> Result<f64> {
    check(n, a, x)?;
    let (m, e) = scaled(n, a, x);
    if m == 0.0 {
        return Ok(0.0);
    }
    if x == 0.0 && e == 0 {
        return Ok(m);
    }
    let arg = LN_2 * (e as f64) - 0.5 * x;
    let log_mag = m.abs().ln() + arg.hi;
    if log_mag < -745.0 {
        return Ok(0.0);
    }
    if arg.hi.abs() < 700.0 {
        Ok(m * arg.hi.exp() * (1.0 + arg.lo))
    } else {
        Ok(m.signum() * (log_mag + arg.lo).exp())
    }
}

//! Normalised harmonic-oscillator eigenfunctions.
//!
//! With `x = αz` and α = 1 the eigenfunctions are
//! `ψ_n(x) = (2^n n! √π)^{-1/2} e^{-x²/2} H_n(x)` and obey
//! `√(n+1) ψ_{n+1} = √2 x ψ_n − √n ψ_{n−1}`.
//!
//! The recurrence is run on `ψ_n · e^{x²/2} · π^{1/4}` with power-of-two
//! rescaling, and the Gaussian factor is applied once at the end in
//! double-double so that neither the polynomial growth in the tunnelling
//! region nor the underflow of `e^{-x²/2}` limits the range.

use super::ddouble::{DoubleDouble, LN_2};
use crate::error::{Error, Result};
use serde::Serialize;

/// Largest level index accepted by the oscillator functions.
pub const MAX_LEVEL: usize = 1_000_000;

/// π^{-1/4}
pub const PI_POW_M_QUARTER: f64 = 0.751_125_544_464_942_5;

const LN_PI_POW_M_QUARTER: f64 = -0.286_182_471_462_350_1;
const RESCALE_BITS: i32 = 600;
const RESCALE_LIMIT: f64 = 4.149_515_568_880_993e180; // 2^600
/// ln(2^-1075): below this even a subnormal rounds to zero. Values are not
/// flushed any earlier, so consecutive levels near the underflow threshold
/// still satisfy the recurrence to within the subnormal spacing.
const LN_FLUSH: f64 = -745.133_219_101_941_1;

/// ψ_0 … ψ_{n_max} at a single position.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OscEvalBatch {
    pub x: f64,
    pub values: Vec<f64>,
}

fn check(n: usize, x: f64) -> Result<()> {
    if n > MAX_LEVEL {
        return Err(Error::Capability(format!(
            "oscillator level {n} exceeds supported maximum {MAX_LEVEL}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite position {x}")));
    }
    Ok(())
}

/// Positions this far beyond the turning point are below 1e-300 for every level.
fn deep_tunnelling(n: usize, x: f64) -> bool {
    x.abs() > ((2 * n + 1) as f64).sqrt() + 100.0
}

/// Scaled recurrence state: `ψ_k = m · 2^e · π^{-1/4} e^{-x²/2}`.
struct ScaledRecurrence {
    s2x: f64,
    k: usize,
    prev: f64,
    cur: f64,
    exp2: i64,
}

impl ScaledRecurrence {
    fn new(x: f64) -> Self {
        Self {
            s2x: std::f64::consts::SQRT_2 * x,
            k: 0,
            prev: 0.0,
            cur: 1.0,
            exp2: 0,
        }
    }

    /// Advance from level k to k + 1.
    #[inline]
    fn step(&mut self) {
        let k = self.k as f64;
        let next = (self.s2x * self.cur - k.sqrt() * self.prev) / (k + 1.0).sqrt();
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        if next.abs() > RESCALE_LIMIT {
            let f = 2f64.powi(-RESCALE_BITS);
            self.prev *= f;
            self.cur *= f;
            self.exp2 += RESCALE_BITS as i64;
        }
    }
}

/// Applies the Gaussian and normalisation factors to a scaled mantissa.
pub(crate) fn unscale(mant: f64, exp2: i64, x: f64) -> f64 {
    if mant == 0.0 {
        return 0.0;
    }
    let arg = DoubleDouble::product(x, x) * -0.5 + LN_2 * (exp2 as f64);
    let log_mag = mant.abs().ln() + arg.hi + LN_PI_POW_M_QUARTER;
    if log_mag < LN_FLUSH {
        return 0.0;
    }
    if arg.hi.abs() < 700.0 {
        return mant * PI_POW_M_QUARTER * arg.hi.exp() * (1.0 + arg.lo);
    }
    // e^{arg} = 2^j e^r with |r| ≤ ln2/2, r formed in double-double so the
    // large exponent costs no relative accuracy.
    let j = (arg.hi / LN_2.hi).round();
    let r = arg - LN_2 * j;
    let mut v = mant * PI_POW_M_QUARTER * r.hi.exp() * (1.0 + r.lo);
    let mut j = j as i32;
    while j != 0 {
        let step = j.clamp(-1000, 1000);
        v *= 2f64.powi(step);
        j -= step;
    }
    v
}

/// ψ_n(x) for α = 1.
pub fn osc_psi(n: usize, x: f64) -> Result<f64> {
    check(n, x)?;
    if deep_tunnelling(n, x) {
        return Ok(0.0);
    }
    let mut rec = ScaledRecurrence::new(x);
    for _ in 0..n {
        rec.step();
    }
    Ok(unscale(rec.cur, rec.exp2, x))
}

/// `[ψ_{n+1−K}(x), …, ψ_n(x)]` from a single recurrence pass; negative
/// indices are reported as zero.
pub fn osc_psi_tail<const K: usize>(n: usize, x: f64) -> Result<[f64; K]> {
    check(n, x)?;
    let mut out = [0.0; K];
    if deep_tunnelling(n, x) {
        return Ok(out);
    }
    let first = (n + 1).saturating_sub(K);
    let offset = K - (n + 1 - first);
    let mut rec = ScaledRecurrence::new(x);
    for level in 0..=n {
        if level > 0 {
            rec.step();
        }
        if level >= first {
            out[offset + level - first] = unscale(rec.cur, rec.exp2, x);
        }
    }
    Ok(out)
}

/// ψ_0(x) … ψ_{n_max}(x) in one upward pass.
pub fn osc_psi_batch(n_max: usize, x: f64) -> Result<OscEvalBatch> {
    check(n_max, x)?;
    if deep_tunnelling(n_max, x) {
        return Ok(OscEvalBatch {
            x,
            values: vec![0.0; n_max + 1],
        });
    }
    let mut values = Vec::with_capacity(n_max + 1);
    let mut rec = ScaledRecurrence::new(x);
    values.push(unscale(rec.cur, rec.exp2, x));
    for _ in 0..n_max {
        rec.step();
        values.push(unscale(rec.cur, rec.exp2, x));
    }
    Ok(OscEvalBatch { x, values })
}

/// dψ_n/dx = −x ψ_n + √(2n) ψ_{n−1}.
pub fn osc_psi_deriv(n: usize, x: f64) -> Result<f64> {
    let [prev, cur] = osc_psi_tail::<2>(n, x)?;
    Ok(-x * cur + ((2 * n) as f64).sqrt() * prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_normalisation_constant() {
        assert_eq!(osc_psi(0, 0.0).unwrap(), PI_POW_M_QUARTER);
        assert!((PI_POW_M_QUARTER - std::f64::consts::PI.powf(-0.25)).abs() < 1e-16);
    }

    #[test]
    fn odd_levels_vanish_at_origin() {
        for n in [1, 3, 101, 10_001] {
            assert_eq!(osc_psi(n, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn batch_at_origin_level_two() {
        let b = osc_psi_batch(2, 0.0).unwrap();
        assert_eq!(b.values[0], PI_POW_M_QUARTER);
        assert_eq!(b.values[1], 0.0);
        let expected = -PI_POW_M_QUARTER / 2f64.sqrt();
        assert!((b.values[2] - expected).abs() < 1e-16);
    }

    #[test]
    fn batch_agrees_with_single_evaluation() {
        for &x in &[-3.2, -0.4, 0.0, 0.7, 5.5, 17.0] {
            let b = osc_psi_batch(40, x).unwrap();
            for (n, v) in b.values.iter().enumerate() {
                assert_eq!(*v, osc_psi(n, x).unwrap(), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn tail_matches_batch_including_negative_indices() {
        let b = osc_psi_batch(7, 1.3).unwrap();
        let t = osc_psi_tail::<3>(7, 1.3).unwrap();
        assert_eq!(t, [b.values[5], b.values[6], b.values[7]]);
        let t = osc_psi_tail::<3>(1, 1.3).unwrap();
        assert_eq!(t, [0.0, b.values[0], b.values[1]]);
    }

    #[test]
    fn derivative_closed_forms() {
        assert_eq!(osc_psi_deriv(0, 0.0).unwrap(), 0.0);
        let d = osc_psi_deriv(1, 0.0).unwrap();
        assert!((d - 2f64.sqrt() * PI_POW_M_QUARTER).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_centered_difference() {
        let h = 1e-4;
        let fd = (osc_psi(7, 0.3 + h).unwrap() - osc_psi(7, 0.3 - h).unwrap()) / (2.0 * h);
        assert!((osc_psi_deriv(7, 0.3).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn deep_tunnelling_flushes_to_zero() {
        assert_eq!(osc_psi(10, 200.0).unwrap(), 0.0);
        assert_eq!(osc_psi(0, 40.0).unwrap(), 0.0);
        assert!(osc_psi(0, 26.0).unwrap() > 0.0);
    }

    #[test]
    fn large_level_in_oscillatory_region_is_bounded() {
        let n = 200_000;
        let l = ((2 * n + 1) as f64).sqrt();
        for &x in &[0.0, 0.3 * l, 0.9 * l, l] {
            let v = osc_psi(n, x).unwrap();
            assert!(v.is_finite() && v.abs() < 1.0, "x={x} v={v}");
        }
    }

    #[test]
    fn rejects_unsupported_level_and_bad_position() {
        assert!(matches!(osc_psi(MAX_LEVEL + 1, 0.0), Err(Error::Capability(_))));
        assert!(matches!(osc_psi(3, f64::NAN), Err(Error::Domain(_))));
    }
}

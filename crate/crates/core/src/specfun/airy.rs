//! Airy function Ai and its first derivative on the real line.
//!
//! |t| ≤ 9 uses the Maclaurin series summed in double-double arithmetic,
//! which keeps the cancellation between the two fundamental series harmless.
//! Beyond that the standard large-argument expansions take over, with the
//! oscillatory form for negative t and the exponentially decaying form for
//! positive t. At |t| = 9 the expansion variable ζ = (2/3)|t|^{3/2} is 18 and
//! the optimally truncated series is accurate to about e^{-2ζ} ≈ 2e-16.

use super::ddouble::DoubleDouble;
use crate::error::{Error, Result};

pub const AIRY_MIN: f64 = -100.0;
pub const AIRY_MAX: f64 = 10.0;
const SERIES_LIMIT: f64 = 9.0;

/// First zero of Ai.
pub const AIRY_A1: f64 = -2.338_107_410_459_767;

const AI0: DoubleDouble = DoubleDouble::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
// -Ai'(0)
const MINUS_AIP0: DoubleDouble =
    DoubleDouble::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

fn check(t: f64) -> Result<()> {
    if !(AIRY_MIN..=AIRY_MAX).contains(&t) {
        return Err(Error::Capability(format!(
            "Airy argument {t} outside supported range [{AIRY_MIN}, {AIRY_MAX}]"
        )));
    }
    Ok(())
}

/// Ai(t) for −100 ≤ t ≤ 10.
pub fn airy_ai(t: f64) -> Result<f64> {
    check(t)?;
    Ok(airy_pair(t).0)
}

/// Ai′(t) for −100 ≤ t ≤ 10.
pub fn airy_ai_prime(t: f64) -> Result<f64> {
    check(t)?;
    Ok(airy_pair(t).1)
}

/// The constant a₁.
pub fn airy_first_zero() -> f64 {
    AIRY_A1
}

/// (Ai(t), Ai′(t)) without the range check. Large negative arguments are
/// needed by the uniform density formula at large N.
pub(crate) fn airy_pair(t: f64) -> (f64, f64) {
    if t.abs() <= SERIES_LIMIT {
        maclaurin(t)
    } else if t > 0.0 {
        decaying(t)
    } else {
        oscillatory(-t)
    }
}

fn maclaurin(t: f64) -> (f64, f64) {
    let t3 = DoubleDouble::product(t, t) * t;
    // f = Σ t^{3k} 1·4·…(3k−2)/(3k)!,  g = Σ t^{3k+1} 2·5·…(3k−1)/(3k+1)!
    let mut f = DoubleDouble::ONE;
    let mut g = DoubleDouble::from_f64(t);
    let mut fp = DoubleDouble::ZERO;
    let mut gp = DoubleDouble::ONE;
    let mut a = DoubleDouble::ONE;
    let mut b = DoubleDouble::from_f64(t);
    let mut ap = DoubleDouble::product(t, t) * 0.5;
    let mut bp = DoubleDouble::ONE;
    fp = fp + ap;
    let mut k = 1.0f64;
    loop {
        a = a * t3 / ((3.0 * k - 1.0) * (3.0 * k));
        b = b * t3 / ((3.0 * k) * (3.0 * k + 1.0));
        if k > 1.0 {
            ap = ap * t3 / ((3.0 * k - 3.0) * (3.0 * k - 1.0));
        }
        bp = bp * t3 / ((3.0 * k) * (3.0 * k - 2.0));
        f = f + a;
        g = g + b;
        if k > 1.0 {
            fp = fp + ap;
        }
        gp = gp + bp;
        let small = |x: DoubleDouble, s: DoubleDouble| x.hi.abs() <= 1e-34 * s.hi.abs().max(1.0);
        if k > 3.0 && small(a, f) && small(b, g) && small(ap, fp) && small(bp, gp) {
            break;
        }
        k += 1.0;
    }
    let ai = AI0 * f - MINUS_AIP0 * g;
    let aip = AI0 * fp - MINUS_AIP0 * gp;
    (ai.to_f64(), aip.to_f64())
}

/// Coefficients u_k, v_k of the large-argument expansions, truncated where
/// the terms u_k/ζ^k stop decreasing.
fn asymptotic_terms(zeta: f64) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    let mut uk = 1.0;
    let mut last = 1.0;
    let mut zk = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        uk *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        zk /= zeta;
        let term = (uk * zk).abs();
        if term > last || term < 1e-18 {
            break;
        }
        last = term;
        u.push(uk * zk);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk * zk);
    }
    (u, v)
}

fn decaying(t: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * t * t.sqrt();
    let (u, v) = asymptotic_terms(zeta);
    let alt = |c: &[f64]| {
        c.iter()
            .enumerate()
            .rev()
            .fold(0.0, |s, (k, x)| s + if k % 2 == 0 { *x } else { -*x })
    };
    let q = t.sqrt().sqrt();
    let e = (-zeta).exp() * 0.5 * FRAC_1_SQRT_PI;
    (e / q * alt(&u), -e * q * alt(&v))
}

fn oscillatory(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (u, v) = asymptotic_terms(zeta);
    // Σ (−1)^k c_{2k} and Σ (−1)^k c_{2k+1}
    let split = |c: &[f64]| {
        let mut even = 0.0;
        let mut odd = 0.0;
        for (k, x) in c.iter().enumerate().rev() {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even += sign * x;
            } else {
                odd += sign * x;
            }
        }
        (even, odd)
    };
    let (ue, uo) = split(&u);
    let (ve, vo) = split(&v);
    let (s, c) = zeta.sin_cos();
    let cos_m = (c + s) * std::f64::consts::FRAC_1_SQRT_2;
    let sin_m = (s - c) * std::f64::consts::FRAC_1_SQRT_2;
    let q = x.sqrt().sqrt();
    let ai = FRAC_1_SQRT_PI / q * (cos_m * ue + sin_m * uo);
    let aip = FRAC_1_SQRT_PI * q * (sin_m * ve - cos_m * vo);
    (ai, aip)
}

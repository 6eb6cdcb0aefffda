//! Bessel function of the first kind, order one, for real x ≥ 0.

use super::ddouble::DoubleDouble;
use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 25.0;

/// J1(x) for x ≥ 0; odd extension for negative x.
pub fn bessel_j1(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite Bessel argument {x}")));
    }
    if x < 0.0 {
        return bessel_j1(-x).map(|v| -v);
    }
    Ok(if x <= SERIES_LIMIT { series(x) } else { hankel(x) })
}

/// Σ (−1)^k (x/2)^{2k+1} / (k! (k+1)!) in double-double.
fn series(x: f64) -> f64 {
    let h = DoubleDouble::from_f64(x * 0.5);
    let h2 = h * h;
    let mut term = h;
    let mut sum = h;
    let mut k = 1.0;
    loop {
        term = -(term * h2) / (k * (k + 1.0));
        sum = sum + term;
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) || k > 200.0 {
            break;
        }
        k += 1.0;
    }
    sum.to_f64()
}

/// Hankel expansion J1 = √(2/(πx)) (P cos ω − Q sin ω), ω = x − 3π/4.
fn hankel(x: f64) -> f64 {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..100 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (4.0 - odd * odd) / (kf * 8.0 * x);
        if a.abs() > last || a.abs() < 1e-18 {
            break;
        }
        last = a.abs();
        // a_k/x^k enters P with sign (−1)^{k/2} for even k, Q with (−1)^{(k−1)/2} for odd k
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
    }
    let (s, c) = x.sin_cos();
    // cos(x − 3π/4) and sin(x − 3π/4) without reducing x − 3π/4 in floating point
    let cos_w = (s - c) * std::f64::consts::FRAC_1_SQRT_2;
    let sin_w = -(s + c) * std::f64::consts::FRAC_1_SQRT_2;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * cos_w - q * sin_w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_and_small_argument() {
        assert_eq!(bessel_j1(0.0).unwrap(), 0.0);
        let x = 1e-5;
        assert!((bessel_j1(x).unwrap() - x / 2.0).abs() < 1e-15);
    }

    #[test]
    fn first_zero() {
        let mut x: f64 = 3.8;
        // J1' = J0 − J1/x; use a secant iteration to avoid needing J0
        let mut x0: f64 = 3.9;
        for _ in 0..30 {
            let (f, f0) = (bessel_j1(x).unwrap(), bessel_j1(x0).unwrap());
            if f == f0 {
                break;
            }
            let xn = x - f * (x - x0) / (f - f0);
            x0 = x;
            x = xn;
        }
        assert!((x - 3.831_705_970_207_512).abs() < 1e-12);
    }

    #[test]
    fn branches_agree_at_the_seam() {
        let a = series(SERIES_LIMIT);
        let b = hankel(SERIES_LIMIT);
        assert!((a - b).abs() < 1e-14, "{a} vs {b}");
    }
}

//! Structural diagnostics of the exact density: extrema, edge scaling, tail
//! self-similarity, the oscillation envelope and the Friedel wavenumber.

use crate::density::{density_exact, density_semiclassical, oscillation_envelope};
use crate::error::{Error, Result};
use crate::model::{fermi_length, fermi_wavenumber};
use crate::specfun::{osc_psi, osc_psi_tail};
use crate::spectral::golden_max;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A density extremum: position and height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub x: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremaReport {
    pub n: usize,
    /// At the zeros of ψ_N, ascending.
    pub maxima: Vec<Extremum>,
    /// At the zeros of ψ_{N−1}, ascending.
    pub minima: Vec<Extremum>,
}

/// Number of zeros of ψ_m below λ: a Sturm count on the m×m Jacobi matrix
/// of the Hermite recurrence (zero diagonal, off-diagonal √(k/2)).
fn zeros_below(m: usize, lambda: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for k in 1..=m {
        let b2 = if k == 1 { 0.0 } else { (k - 1) as f64 * 0.5 };
        d = -lambda - if k == 1 { 0.0 } else { b2 / d };
        if d == 0.0 {
            d = -1e-300;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The zero of ψ_m with ascending index `j` (0-based), to full precision.
fn zero_of(m: usize, j: usize) -> f64 {
    let bound = ((2 * m + 1) as f64).sqrt();
    let (mut a, mut b) = (-bound, bound);
    // Isolate: count(a) ≤ j < count(b).
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        if zeros_below(m, c) > j {
            b = c;
        } else {
            a = c;
        }
        if b - a < 1e-6 * (1.0 + bound) / (m as f64) {
            break;
        }
    }
    polish(m, a, b)
}

/// Safeguarded Newton on ψ_m inside a sign-change bracket.
fn polish(m: usize, mut a: f64, mut b: f64) -> f64 {
    let fa = osc_psi(m, a).unwrap_or(0.0);
    if fa == 0.0 {
        return a;
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..100 {
        let [p0, p1] = osc_psi_tail::<2>(m, x).unwrap_or([0.0, 0.0]);
        if p1 == 0.0 {
            return x;
        }
        if (p1 > 0.0) == (fa > 0.0) {
            a = x;
        } else {
            b = x;
        }
        let d = -x * p1 + ((2 * m) as f64).sqrt() * p0;
        let mut next = x - p1 / d;
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        if (next - x).abs() <= 1e-15 * (1.0 + x.abs()) || b - a <= 1e-15 * (1.0 + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

/// All zeros of ψ_m in ascending order, exactly antisymmetric about 0.
pub fn oscillator_zeros(m: usize) -> Vec<f64> {
    let half = m / 2;
    let pos: Vec<f64> = (0..half)
        .into_par_iter()
        .map(|i| zero_of(m, m - half + i))
        .collect();
    let mut out: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
    if m % 2 == 1 {
        out.push(0.0);
    }
    out.extend(pos);
    out
}

/// The `count` largest zeros of ψ_m, ascending.
pub fn largest_oscillator_zeros(m: usize, count: usize) -> Vec<f64> {
    let count = count.min(m);
    (m - count..m).into_par_iter().map(|j| zero_of(m, j)).collect()
}

fn checked_height(x: f64, n: usize, formula: f64) -> Result<Extremum> {
    let direct = density_exact(x, n)?;
    if (direct - formula).abs() > 1e-10 * formula.abs().max(1.0) {
        return Err(Error::Consistency(format!(
            "extremum height at x = {x}: {formula} from ψ, {direct} from the density"
        )));
    }
    Ok(Extremum { x, height: formula })
}

/// Positions and heights of the N maxima and N − 1 minima of n₀(x, N).
pub fn find_extrema(n: usize) -> Result<ExtremaReport> {
    if !(1..=2000).contains(&n) {
        return Err(Error::Domain(format!("extrema search supports 1 ≤ N ≤ 2000, got {n}")));
    }
    let nf = n as f64;
    let maxima = oscillator_zeros(n)
        .into_par_iter()
        .map(|x| checked_height(x, n, nf * osc_psi(n - 1, x)?.powi(2)))
        .collect::<Result<Vec<_>>>()?;
    let minima = oscillator_zeros(n - 1)
        .into_par_iter()
        .map(|x| {
            let h = if n >= 2 { (nf - 1.0) * osc_psi(n - 2, x)?.powi(2) } else { 0.0 };
            checked_height(x, n, h)
        })
        .collect::<Result<Vec<_>>>()?;
    if maxima.len() != n || minima.len() != n - 1 {
        return Err(Error::Consistency(format!(
            "found {} maxima and {} minima for N = {n}",
            maxima.len(),
            minima.len()
        )));
    }
    if maxima.windows(2).zip(&minima).any(|(w, m)| !(w[0].x < m.x && m.x < w[1].x)) {
        return Err(Error::Consistency(format!("extrema not interlaced for N = {n}")));
    }
    Ok(ExtremaReport { n, maxima, minima })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeScalingReport {
    pub n: usize,
    pub l_fermi: f64,
    pub last_max_pos: f64,
    pub delta_x_n: f64,
    pub last_max_height: f64,
    pub k_min: f64,
    /// L_F (1 − 1.17 N^{−2/3})
    pub predicted_pos: f64,
    /// 1.65 N^{−1/6}
    pub predicted_delta_x: f64,
    /// 0.7 N^{1/6}
    pub predicted_height: f64,
    /// 2π · 0.8 N^{1/6}
    pub predicted_k_min: f64,
}

impl EdgeScalingReport {
    pub fn pos_rel_error(&self) -> f64 {
        (self.last_max_pos - self.predicted_pos).abs() / self.predicted_pos
    }
    pub fn height_rel_error(&self) -> f64 {
        (self.last_max_height - self.predicted_height).abs() / self.predicted_height
    }
    pub fn k_min_rel_error(&self) -> f64 {
        (self.k_min - self.predicted_k_min).abs() / self.predicted_k_min
    }
}

/// Exact position and height of the outermost maximum and the smallest
/// local wavenumber, next to their large-N predictions.
pub fn edge_scaling(n: usize) -> Result<EdgeScalingReport> {
    if n < 50 {
        return Err(Error::Domain(format!("edge scaling needs N ≥ 50, got {n}")));
    }
    let z = largest_oscillator_zeros(n, 2);
    let (z_prev, z_last) = (z[0], z[1]);
    let nf = n as f64;
    let l = fermi_length(n);
    let n16 = nf.powf(1.0 / 6.0);
    Ok(EdgeScalingReport {
        n,
        l_fermi: l,
        last_max_pos: z_last,
        delta_x_n: l - z_last,
        last_max_height: density_exact(z_last, n)?,
        k_min: 2.0 * PI / (z_last - z_prev),
        predicted_pos: l * (1.0 - 1.17 * nf.powf(-2.0 / 3.0)),
        predicted_delta_x: 1.65 / n16,
        predicted_height: 0.7 * n16,
        predicted_k_min: 2.0 * PI * 0.8 * n16,
    })
}

/// Largest relative deviation between the edge profiles of N1 and N2 after
/// rescaling height by (N1/N2)^{1/6} and distance from L_F by (N2/N1)^{1/6},
/// sampled on f = Δx N1^{1/6} ∈ [1, 10].
pub fn tail_collapse(n1: usize, n2: usize) -> Result<f64> {
    if n1 < 50 || n2 < n1 {
        return Err(Error::Domain(format!("tail collapse needs 50 ≤ N1 ≤ N2, got ({n1}, {n2})")));
    }
    let (l1, l2) = (fermi_length(n1), fermi_length(n2));
    let s1 = (n1 as f64).powf(1.0 / 6.0);
    let s2 = (n2 as f64).powf(1.0 / 6.0);
    let ratio = s1 / s2;
    let devs = (0..=400)
        .into_par_iter()
        .map(|i| {
            let f = 1.0 + 9.0 * i as f64 / 400.0;
            let a = density_exact(l1 - f / s1, n1)?;
            let b = density_exact(l2 - f / s2, n2)? * ratio;
            Ok((a - b).abs() / a.abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(devs.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeConfig {
    /// Window in f = (L_F − x) N^{1/6}.
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Default for EnvelopeConfig {
    fn default() -> Self {
        Self { f_lo: 1.0, f_hi: 10.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeFit {
    pub n: usize,
    /// Fitted exponent δ in amplitude ∝ (1 − x/L_F)^{−δ}.
    pub delta: f64,
    /// Fit window in x.
    pub fit_window: (f64, f64),
    /// RMS residual of the log–log fit.
    pub residual: f64,
    pub points: Vec<(f64, f64)>,
}

/// Fits the growth of the oscillation amplitude towards the edge. The
/// amplitude at each maximum is n₀ minus the full slowly varying background
/// n_sc + 1/(2πL_F√(1−(x/L_F)²)).
pub fn envelope_fit(n: usize) -> Result<EnvelopeFit> {
    envelope_fit_with(n, &EnvelopeConfig::default())
}

pub fn envelope_fit_with(n: usize, cfg: &EnvelopeConfig) -> Result<EnvelopeFit> {
    if n < 100 {
        return Err(Error::Domain(format!("envelope fit needs N ≥ 100, got {n}")));
    }
    let l = fermi_length(n);
    let s = (n as f64).powf(1.0 / 6.0);
    let (x_lo, x_hi) = (l - cfg.f_hi / s, l - cfg.f_lo / s);
    // Enough top zeros to cover the window: local spacing there is ≳ π/k_F(x).
    let want = (((2.0 * n as f64).sqrt() * (cfg.f_hi / s) / PI).ceil() as usize + 40).min(n);
    let zeros = largest_oscillator_zeros(n, want);
    let mut pts = Vec::new();
    for &x in zeros.iter().filter(|&&x| x >= x_lo && x <= x_hi) {
        let bg = density_semiclassical(x, n) + oscillation_envelope(x, n);
        let amp = density_exact(x, n)? - bg;
        if amp > 0.0 {
            pts.push(((1.0 - x / l).ln(), amp.ln()));
        }
    }
    if pts.len() < 6 {
        return Err(Error::InsufficientData(format!(
            "{} usable maxima in the envelope window for N = {n}",
            pts.len()
        )));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(EnvelopeFit {
        n,
        delta: -slope,
        fit_window: (x_lo, x_hi),
        residual,
        points: pts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPeak {
    pub wavenumber: f64,
    /// 2π / (sampled window length)
    pub bin_width: f64,
    /// Windowed cosine coefficient at the peak.
    pub cos_coefficient: f64,
    /// Peak magnitude over the median of the scanned spectrum.
    pub prominence: f64,
}

/// Dominant wavenumber of a sampled signal on a uniform grid: a quadratic
/// trend a + bx² is removed, a Hann window applied and |DTFT| maximised.
pub fn dominant_wavenumber(xs: &[f64], ys: &[f64], k_max: f64) -> Result<SpectralPeak> {
    let m = xs.len();
    if m < 16 || ys.len() != m {
        return Err(Error::InsufficientData("need at least 16 samples".into()));
    }
    // Least squares for a + b x².
    let mf = m as f64;
    let q: Vec<f64> = xs.iter().map(|x| x * x).collect();
    let mq = q.iter().sum::<f64>() / mf;
    let my = ys.iter().sum::<f64>() / mf;
    let sqq: f64 = q.iter().map(|v| (v - mq).powi(2)).sum();
    let sqy: f64 = q.iter().zip(ys).map(|(v, y)| (v - mq) * (y - my)).sum();
    let b = if sqq > 0.0 { sqy / sqq } else { 0.0 };
    let a = my - b * mq;
    let (x0, x1) = (xs[0], xs[m - 1]);
    let width = x1 - x0;
    let centre = 0.5 * (x0 + x1);
    let w: Vec<f64> = xs
        .iter()
        .zip(ys.iter().zip(&q))
        .map(|(x, (y, v))| {
            let hann = 0.5 * (1.0 + (2.0 * PI * (x - centre) / width).cos());
            hann * (y - a - b * v)
        })
        .collect();
    let amp = |k: f64| {
        let (mut c, mut s) = (0.0, 0.0);
        for (x, v) in xs.iter().zip(&w) {
            let (sn, cs) = (k * (x - centre)).sin_cos();
            c += v * cs;
            s += v * sn;
        }
        (c, s)
    };
    let bin = 2.0 * PI / width;
    let step = bin / 16.0;
    let steps = (k_max / step).ceil() as usize;
    // Skip the lowest bins, which carry the residual of the trend removal.
    let scan: Vec<(f64, f64)> = (0..=steps)
        .into_par_iter()
        .map(|i| {
            let k = i as f64 * step;
            let (c, s) = amp(k);
            (k, c.hypot(s))
        })
        .collect();
    let usable: Vec<&(f64, f64)> = scan.iter().filter(|p| p.0 >= 1.5 * bin).collect();
    let best = usable
        .iter()
        .copied()
        .fold(None::<&(f64, f64)>, |acc, p| match acc {
            Some(a) if a.1 >= p.1 => Some(a),
            _ => Some(p),
        })
        .ok_or_else(|| Error::NotFound("empty spectral scan".into()))?;
    let mut mags: Vec<f64> = usable.iter().map(|p| p.1).collect();
    mags.sort_by(|a, b| a.total_cmp(b));
    let median = mags[mags.len() / 2];
    let k = golden_max(&|k: f64| {
        let (c, s) = amp(k);
        c.hypot(s)
    }, best.0 - step, best.0 + step);
    let (c, s) = amp(k);
    let prominence = c.hypot(s) / median.max(1e-300);
    if prominence < 3.0 {
        return Err(Error::NotFound(format!(
            "no clear spectral peak (prominence {prominence:.2})"
        )));
    }
    Ok(SpectralPeak {
        wavenumber: k,
        bin_width: bin,
        cos_coefficient: c,
        prominence,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FriedelReport {
    pub n: usize,
    pub wavenumber: f64,
    pub expected: f64,
    pub bin_width: f64,
    /// Sign s of the central oscillation written as −s·cos(kx); the bulk
    /// formula predicts s = (−1)^N.
    pub parity_sign: i32,
    pub prominence: f64,
}

/// Samples of n₀ − n_sc in the central window |x| ≤ 0.2 L_F · b for a
/// density stretched by the factor b.
pub(crate) fn friedel_samples(n: usize, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let half = 0.2 * fermi_length(n) * b;
    let m = 1025;
    let xs: Vec<f64> = (0..m)
        .map(|i| (-half * (m - 1 - i) as f64 + half * i as f64) / (m - 1) as f64)
        .collect();
    let ys = xs
        .par_iter()
        .map(|&x| Ok((density_exact(x / b, n)? - density_semiclassical(x / b, n)) / b))
        .collect::<Result<Vec<_>>>()?;
    Ok((xs, ys))
}

pub(crate) fn friedel_report(n: usize, b: f64) -> Result<FriedelReport> {
    if n < 20 {
        return Err(Error::Domain(format!("Friedel analysis needs N ≥ 20, got {n}")));
    }
    let (xs, ys) = friedel_samples(n, b)?;
    let expected = 2.0 * fermi_wavenumber(n) / b;
    let peak = dominant_wavenumber(&xs, &ys, 2.0 * expected)?;
    Ok(FriedelReport {
        n,
        wavenumber: peak.wavenumber,
        expected,
        bin_width: peak.bin_width,
        parity_sign: if peak.cos_coefficient < 0.0 { 1 } else { -1 },
        prominence: peak.prominence,
    })
}

/// Dominant wavenumber of the central density ripples, expected near 2k_F.
pub fn friedel_wavelength(n: usize) -> Result<FriedelReport> {
    friedel_report(n, 1.0)
}

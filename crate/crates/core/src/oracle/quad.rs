//! Adaptive composite Gauss–Legendre quadrature.
//!
//! Each panel is integrated whole and as two halves; the difference is the
//! panel's error estimate. Panels that miss their share of the tolerance are
//! bisected up to `max_depth` times. Work is organised per initial panel so
//! the result does not depend on evaluation order.

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub lo: f64,
    pub hi: f64,
    /// Initial number of equal panels.
    pub panels: usize,
    /// Gauss–Legendre points per panel.
    pub order: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl QuadratureSpec {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            panels: 16,
            order: 20,
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_depth: 30,
        }
    }

    pub fn panels(mut self, panels: usize) -> Self {
        self.panels = panels;
        self
    }

    pub fn order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn tol(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::Domain(format!(
                "quadrature bounds [{}, {}] invalid",
                self.lo, self.hi
            )));
        }
        if self.panels == 0 || self.order < 2 {
            return Err(Error::Domain("quadrature needs ≥ 1 panel and order ≥ 2".into()));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Plain rule on [a, b].
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum();
        s * h
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

struct Accum {
    value: f64,
    error: f64,
    converged: bool,
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    abs_tol: f64,
    rel_tol: f64,
    depth: u32,
    acc: &mut Accum,
) {
    let m = 0.5 * (a + b);
    let left = rule.integrate(f, a, m);
    let right = rule.integrate(f, m, b);
    let refined = left + right;
    let err = (refined - whole).abs();
    if err <= abs_tol.max(rel_tol * refined.abs()) || !err.is_finite() {
        acc.value += refined;
        acc.error += err;
        if !err.is_finite() {
            acc.converged = false;
        }
        return;
    }
    // Out of depth: keep the panel and let its error count against the
    // global target.
    if depth == 0 || m <= a || m >= b {
        acc.value += refined;
        acc.error += err;
        return;
    }
    adapt(rule, f, a, m, left, 0.5 * abs_tol, rel_tol, depth - 1, acc);
    adapt(rule, f, m, b, right, 0.5 * abs_tol, rel_tol, depth - 1, acc);
}

/// ∫ f over `[spec.lo, spec.hi]` with an error estimate.
///
/// Fails with [`Error::NonConvergence`] (carrying the best estimate) when the
/// summed panel error exceeds `max(abs_tol, rel_tol·|I|)`.
pub fn quad_integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    let rule = GaussLegendre::new(spec.order);
    let width = (spec.hi - spec.lo) / spec.panels as f64;
    let mut acc = Accum {
        value: 0.0,
        error: 0.0,
        converged: true,
    };
    for p in 0..spec.panels {
        let a = spec.lo + width * p as f64;
        let b = if p + 1 == spec.panels {
            spec.hi
        } else {
            spec.lo + width * (p + 1) as f64
        };
        let whole = rule.integrate(&f, a, b);
        let share = spec.abs_tol / spec.panels as f64;
        adapt(&rule, &f, a, b, whole, share, spec.rel_tol, spec.max_depth, &mut acc);
    }
    let target = spec.abs_tol.max(spec.rel_tol * acc.value.abs());
    if !acc.converged || !acc.value.is_finite() || acc.error > target {
        return Err(Error::NonConvergence {
            what: format!("quadrature over [{}, {}]", spec.lo, spec.hi),
            best: acc.value,
            error_estimate: acc.error,
        });
    }
    Ok(QuadResult {
        value: acc.value,
        error_estimate: acc.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::osc_psi;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let r = GaussLegendre::new(7);
        let v = r.integrate(&|x: f64| x.powi(12) + 3.0 * x.powi(5), -1.0, 1.0);
        assert!((v - 2.0 / 13.0).abs() < 1e-15);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian_integral() {
        let r = quad_integrate(|x| (-x * x).exp(), &QuadratureSpec::new(-10.0, 10.0)).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!(r.error_estimate <= 1e-12);
    }

    #[test]
    fn oscillator_normalisation() {
        let r = quad_integrate(
            |x| osc_psi(5, x).unwrap().powi(2),
            &QuadratureSpec::new(-15.0, 15.0),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn singular_integrand_reports_nonconvergence() {
        let spec = QuadratureSpec::new(0.0, 1.0).tol(1e-14, 1e-14);
        match quad_integrate(|x: f64| 1.0 / x.sqrt().max(1e-300).powi(3), &spec) {
            Err(Error::NonConvergence { best, .. }) => assert!(best > 0.0),
            other => panic!("expected nonconvergence, got {other:?}"),
        }
    }

    #[test]
    fn invalid_spec_rejected() {
        assert!(quad_integrate(|x| x, &QuadratureSpec::new(1.0, 0.0)).is_err());
    }
}

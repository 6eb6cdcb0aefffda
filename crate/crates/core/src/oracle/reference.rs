//! Frozen extended-precision reference corpus and slow double-double
//! reference implementations used to cross-check it.
//!
//! Corpus rows are tab separated: `function  args  value  precision  generator`,
//! with comma-separated arguments. Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::specfun::ddouble::DoubleDouble;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRow {
    pub function: String,
    pub args: Vec<f64>,
    pub value: f64,
    pub precision: f64,
    pub generator: String,
}

pub fn parse_corpus(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(Error::Parse(format!(
                "line {}: expected 5 tab-separated fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: '{s}': {e}", lineno + 1)))
        };
        let args = fields[1].split(',').map(num).collect::<Result<Vec<_>>>()?;
        rows.push(ReferenceRow {
            function: fields[0].to_string(),
            args,
            value: num(fields[2])?,
            precision: num(fields[3])?,
            generator: fields[4].to_string(),
        });
    }
    Ok(rows)
}

pub fn write_corpus(rows: &[ReferenceRow]) -> String {
    let mut out = String::from("# function\targs\tvalue\tprecision\tgenerator\n");
    for r in rows {
        let args: Vec<String> = r.args.iter().map(|a| format!("{a:?}")).collect();
        let _ = writeln!(
            out,
            "{}\t{}\t{:.16e}\t{:e}\t{}",
            r.function,
            args.join(","),
            r.value,
            r.precision,
            r.generator
        );
    }
    out
}

/// ψ_n(x) by the plain recurrence carried out entirely in double-double,
/// Gaussian factor included from the start. Limited to moderate arguments
/// (the Gaussian must not underflow).
pub fn osc_psi_dd(n: usize, x: f64) -> Result<f64> {
    if x * x > 1400.0 {
        return Err(Error::Capability(format!("reference ψ limited to x² ≤ 1400, got x = {x}")));
    }
    let pi_quarter = crate::specfun::ddouble::PI.sqrt().sqrt();
    let g = (DoubleDouble::product(x, x) * -0.5).exp() / pi_quarter;
    let s2x = DoubleDouble::from_f64(2.0).sqrt() * x;
    let mut prev = DoubleDouble::ZERO;
    let mut cur = g;
    for k in 0..n {
        let kf = k as f64;
        let next = (s2x * cur - DoubleDouble::from_f64(kf).sqrt() * prev)
            / DoubleDouble::from_f64(kf + 1.0).sqrt();
        prev = cur;
        cur = next;
    }
    Ok(cur.to_f64())
}

/// L_n^{(a)}(x) by the upward recurrence in double-double.
pub fn laguerre_dd(n: usize, a: f64, x: f64) -> f64 {
    let mut prev = DoubleDouble::ONE;
    if n == 0 {
        return 1.0;
    }
    let mut cur = DoubleDouble::from_f64(1.0 + a) - x;
    for k in 1..n {
        let kf = k as f64;
        let c = DoubleDouble::from_f64(2.0 * kf + 1.0 + a) - x;
        let next = (c * cur - prev * (kf + a)) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur.to_f64()
}

/// Evaluates the library function named by a corpus row.
pub fn evaluate_row(row: &ReferenceRow) -> Result<f64> {
    use crate::specfun::*;
    let a = &row.args;
    let arity = |k: usize| {
        if a.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!("{} takes {k} arguments, row has {}", row.function, a.len())))
        }
    };
    match row.function.as_str() {
        "osc_psi" => arity(2).and_then(|_| osc_psi(a[0] as usize, a[1])),
        "airy_ai" => arity(1).and_then(|_| airy_ai(a[0])),
        "airy_ai_prime" => arity(1).and_then(|_| airy_ai_prime(a[0])),
        "laguerre_assoc" => arity(3).and_then(|_| laguerre_assoc(a[0] as usize, a[1], a[2])),
        "laguerre_weighted" => arity(3).and_then(|_| laguerre_weighted(a[0] as usize, a[1], a[2])),
        "bessel_j1" => arity(1).and_then(|_| bessel_j1(a[0])),
        other => Err(Error::Parse(format!("unknown corpus function '{other}'"))),
    }
}

/// Accuracy contract of each function: (relative, absolute floor).
pub fn tolerance(function: &str) -> (f64, f64) {
    match function {
        "osc_psi" | "airy_ai" | "airy_ai_prime" => (1e-10, 1e-12),
        "laguerre_assoc" | "laguerre_weighted" => (1e-9, 0.0),
        _ => (1e-10, 1e-15),
    }
}

/// Whether `computed` meets the contract for a row.
pub fn row_passes(row: &ReferenceRow, computed: f64) -> bool {
    let (rel, abs) = tolerance(&row.function);
    let err = (computed - row.value).abs();
    err <= rel * row.value.abs() || err <= abs
}

//! Command-line front end. Every command evaluates one observable or runs one
//! analysis and writes CSV (with `#` metadata lines) or JSON to stdout or a
//! file. Lengths are emitted in units of 1/α, or in metres when the SI flags
//! are given.

use crate::analysis::{envelope_fit, find_extrema, EnvelopeFit, ExtremaReport, FriedelReport};
use crate::density::{density_profile, generated_by, Axis, Method, Profile, ProfileMeta};
use crate::error::Error;
use crate::expansion::{expansion_snapshot, friedel_stretch, propagate_numeric, scale_factor};
use crate::model::{fermi_length, fermi_wavenumber};
use crate::momentum::momentum_density_scaled;
use crate::spectral::{ft_exact, ft_semiclassical, ft_sum_rule, hump_locate, HumpReport, SpectralMethod};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

const HBAR: f64 = 1.054_571_817e-34;
const AMU: f64 = 1.660_539_066_60e-27;

#[derive(Debug, Parser)]
#[command(name = "fermi1d", version, about = "Ideal Fermi gas in a 1D harmonic trap")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Position density on a grid
    Density {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
        /// exact, direct-sum, semiclassical, airy-uniform, edge, bulk or box
        #[arg(long, default_value = "exact")]
        method: String,
    },
    /// Exact and semiclassical Fourier transforms with the hump report
    Fourier {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Momentum density
    Momentum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Density after free expansion for a time t
    Expand {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
        /// Time in units of 1/ω, or seconds when --omega-hz is given
        #[arg(long)]
        t: f64,
        /// expanded (closed form) or propagated (mode propagation, N ≤ 50)
        #[arg(long, default_value = "expanded")]
        method: String,
    },
    /// Positions and heights of the density maxima and minima
    Extrema {
        #[command(flatten)]
        common: Common,
    },
    /// Fit of the oscillation envelope exponent near the edge
    Envelope {
        #[command(flatten)]
        common: Common,
    },
    /// Dominant wavenumber of the central Friedel oscillations
    Friedel {
        #[command(flatten)]
        common: Common,
        /// Expansion time; 0 for the trapped cloud
        #[arg(long, default_value_t = 0.0)]
        t: f64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Particle number
    #[arg(long)]
    pub n: usize,
    /// Inverse oscillator length (default 1)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Trap frequency in Hz; with --mass-amu sets α and switches to SI units
    #[arg(long)]
    pub omega_hz: Option<f64>,
    /// Particle mass in atomic mass units
    #[arg(long)]
    pub mass_amu: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    /// Derived from the trap scales rather than given on the command line.
    pub auto: bool,
}

/// Fully resolved invocation, echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub alpha: f64,
    pub units: String,
    pub grid: Option<GridSpec>,
    pub method: Option<Method>,
    /// Time as given on the command line.
    pub t: Option<f64>,
    /// ω t.
    pub t_scaled: Option<f64>,
    pub omega_hz: Option<f64>,
    pub mass_amu: Option<f64>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(Error::NotFound(_)) => 4,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// α from --alpha or from the SI pair, and the unit label for lengths.
fn resolve_alpha(c: &Common) -> Result<(f64, String), CliError> {
    match (c.omega_hz, c.mass_amu) {
        (Some(f), Some(m)) => {
            if c.alpha.is_some() {
                return usage("--alpha cannot be combined with --omega-hz/--mass-amu");
            }
            if !(f > 0.0 && m > 0.0 && f.is_finite() && m.is_finite()) {
                return usage("--omega-hz and --mass-amu must be positive");
            }
            let omega = 2.0 * std::f64::consts::PI * f;
            Ok(((m * AMU * omega / HBAR).sqrt(), "SI: length m, wavenumber 1/m, time s".into()))
        }
        (None, None) => {
            let a = c.alpha.unwrap_or(1.0);
            if !(a > 0.0 && a.is_finite()) {
                return usage(format!("--alpha must be positive, got {a}"));
            }
            Ok((a, "length 1/alpha, wavenumber alpha, time 1/omega".into()))
        }
        _ => usage("--omega-hz and --mass-amu must be given together"),
    }
}

fn resolve_grid(g: &GridArgs, auto: (f64, f64, usize)) -> Result<GridSpec, CliError> {
    let spec = GridSpec {
        min: g.min.unwrap_or(auto.0),
        max: g.max.unwrap_or(auto.1),
        points: g.points.unwrap_or(auto.2),
        auto: g.min.is_none() && g.max.is_none(),
    };
    if spec.points < 2 {
        return usage(format!("--points must be at least 2, got {}", spec.points));
    }
    if !(spec.min < spec.max) || !spec.min.is_finite() || !spec.max.is_finite() {
        return usage(format!("grid needs min < max, got [{}, {}]", spec.min, spec.max));
    }
    Ok(spec)
}

fn grid_points(g: &GridSpec) -> Vec<f64> {
    let d = (g.points - 1) as f64;
    (0..g.points)
        .map(|i| (g.min * (g.points - 1 - i) as f64 + g.max * i as f64) / d)
        .collect()
}

/// Dimensionless range covered by the automatic grid of an approximate method.
fn method_window(method: Method, n: usize) -> Option<(f64, f64)> {
    let l = fermi_length(n);
    match method {
        Method::AiryUniform => {
            let li = ((2 * n).saturating_sub(3) as f64).sqrt();
            Some((-li, li))
        }
        // Pulled in by a hair so rounding cannot push the end past f = 10.
        Method::Edge => Some((l - 10.0 * (1.0 - 1e-12) / (n as f64).powf(1.0 / 6.0), l)),
        Method::Bulk => Some((-0.2 * l, 0.2 * l)),
        Method::Box => Some((0.0, 2.0 * l)),
        _ => None,
    }
}

/// Whether an approximate method is defined at the dimensionless position x.
fn method_accepts(method: Method, n: usize, x: f64) -> bool {
    let l = fermi_length(n);
    match method {
        Method::AiryUniform => x.abs() <= ((2 * n).saturating_sub(3) as f64).sqrt(),
        Method::Edge => {
            let f = (l - x.abs()) * (n as f64).powf(1.0 / 6.0);
            (0.0..=10.0).contains(&f)
        }
        Method::Bulk => x.abs() <= 0.2 * l,
        Method::Box => x > 0.0 && x < 2.0 * l,
        _ => true,
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return usage("--n must be at least 1");
    }
    Ok(())
}

fn parse_method(s: &str, allowed: &[Method], command: &str) -> Result<Method, CliError> {
    let m: Method = s.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
    if !allowed.contains(&m) {
        let names: Vec<_> = allowed.iter().map(|m| m.as_str()).collect();
        return usage(format!("method '{m}' is not valid for {command}; use one of {}", names.join(", ")));
    }
    Ok(m)
}

/// Builds the resolved configuration from parsed arguments.
pub fn resolve(cmd: &Command) -> Result<RunConfig, CliError> {
    let common = match cmd {
        Command::Density { common, .. }
        | Command::Fourier { common, .. }
        | Command::Momentum { common, .. }
        | Command::Expand { common, .. }
        | Command::Extrema { common }
        | Command::Envelope { common }
        | Command::Friedel { common, .. } => common,
    };
    check_n(common.n)?;
    let n = common.n;
    let (alpha, units) = resolve_alpha(common)?;
    let omega = common.omega_hz.map(|f| 2.0 * std::f64::consts::PI * f);
    let scaled_time = |t: f64| -> Result<f64, CliError> {
        if !(t >= 0.0 && t.is_finite()) {
            return usage(format!("--t must be finite and ≥ 0, got {t}"));
        }
        Ok(omega.map_or(t, |w| w * t))
    };
    let mut cfg = RunConfig {
        command: String::new(),
        n,
        alpha,
        units,
        grid: None,
        method: None,
        t: None,
        t_scaled: None,
        omega_hz: common.omega_hz,
        mass_amu: common.mass_amu,
        format: common.format,
        output: common.output.clone(),
    };
    let l = fermi_length(n) / alpha;
    let kf = fermi_wavenumber(n) * alpha;
    match cmd {
        Command::Density { grid, method, .. } => {
            cfg.command = "density".into();
            let m = parse_method(
                method,
                &[
                    Method::Exact,
                    Method::DirectSum,
                    Method::Semiclassical,
                    Method::AiryUniform,
                    Method::Edge,
                    Method::Bulk,
                    Method::Box,
                ],
                "density",
            )?;
            let auto = match method_window(m, n) {
                Some((lo, hi)) => (lo / alpha, hi / alpha),
                None => (-1.2 * l, 1.2 * l),
            };
            let spec = resolve_grid(grid, (auto.0, auto.1, 201))?;
            if m == Method::AiryUniform && n < 20 {
                return usage("airy-uniform needs --n ≥ 20");
            }
            if let Some((lo, hi)) = method_window(m, n) {
                if spec.auto && m == Method::Box {
                    // Keep clear of the hard walls.
                    let (lo, hi) = (lo / alpha, hi / alpha);
                    let h = (hi - lo) / spec.points as f64;
                    cfg.grid = Some(GridSpec {
                        min: lo + 0.5 * h,
                        max: hi - 0.5 * h,
                        ..spec
                    });
                } else if let Some(z) = grid_points(&spec).into_iter().find(|z| !method_accepts(m, n, z * alpha)) {
                    return usage(format!(
                        "method {m} is not defined at {z}; its window is [{}, {}]",
                        lo / alpha,
                        hi / alpha
                    ));
                }
            }
            if cfg.grid.is_none() {
                cfg.grid = Some(spec);
            }
            cfg.method = Some(m);
        }
        Command::Fourier { grid, .. } => {
            cfg.command = "fourier".into();
            cfg.grid = Some(resolve_grid(grid, (0.0, 3.0 * kf, 512))?);
        }
        Command::Momentum { grid, .. } => {
            cfg.command = "momentum".into();
            cfg.grid = Some(resolve_grid(grid, (-1.2 * kf, 1.2 * kf, 201))?);
        }
        Command::Expand { grid, t, method, .. } => {
            cfg.command = "expand".into();
            let m = parse_method(method, &[Method::Expanded, Method::Propagated], "expand")?;
            let tau = scaled_time(*t)?;
            if m == Method::Propagated && n > 50 {
                return usage("propagated expansion supports --n ≤ 50");
            }
            let b = tau.hypot(1.0);
            cfg.grid = Some(resolve_grid(grid, (-1.2 * l * b, 1.2 * l * b, 201))?);
            cfg.method = Some(m);
            cfg.t = Some(*t);
            cfg.t_scaled = Some(tau);
        }
        Command::Extrema { .. } => cfg.command = "extrema".into(),
        Command::Envelope { .. } => cfg.command = "envelope".into(),
        Command::Friedel { t, .. } => {
            cfg.command = "friedel".into();
            cfg.t = Some(*t);
            cfg.t_scaled = Some(scaled_time(*t)?);
        }
    }
    Ok(cfg)
}

/// Fixed 17-significant-digit rendering.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn header(cfg: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# generated_by: {}", generated_by());
    let _ = writeln!(s, "# command: {}", cfg.command);
    let _ = writeln!(s, "# n: {}", cfg.n);
    let _ = writeln!(s, "# alpha: {}", num(cfg.alpha));
    if let Some(m) = cfg.method {
        let _ = writeln!(s, "# method: {m}");
    }
    let _ = writeln!(s, "# units: {}", cfg.units);
    let _ = writeln!(
        s,
        "# config: {}",
        serde_json::to_string(cfg).expect("config serializes")
    );
    s
}

fn json<T: Serialize>(cfg: &RunConfig, data: &T) -> String {
    #[derive(Serialize)]
    struct Emission<'a, T: Serialize> {
        #[serde(flatten)]
        data: &'a T,
        config: &'a RunConfig,
    }
    let mut s = serde_json::to_string_pretty(&Emission { data, config: cfg }).expect("output serializes");
    s.push('\n');
    s
}

fn scaled_profile(p: Profile, alpha: f64, axis: Axis, value_scale: f64) -> Result<Profile, CliError> {
    let grid = p.grid.iter().map(|x| x / alpha).collect();
    let values = p.values.iter().map(|v| v * value_scale).collect();
    Ok(Profile::new(grid, values, ProfileMeta { alpha, axis, ..p.meta })?)
}

fn profile_output(cfg: &RunConfig, p: &Profile, column: &str, extra: &[(&str, f64)]) -> String {
    if cfg.format == Format::Json {
        #[derive(Serialize)]
        struct WithExtra<'a> {
            #[serde(flatten)]
            profile: &'a Profile,
            #[serde(flatten)]
            extra: std::collections::BTreeMap<&'a str, f64>,
        }
        let data = WithExtra {
            profile: p,
            extra: extra.iter().copied().collect(),
        };
        return json(cfg, &data);
    }
    let mut s = header(cfg);
    for (k, v) in extra {
        let _ = writeln!(s, "# {k}: {}", num(*v));
    }
    let axis = match p.meta.axis {
        Axis::Position => "x",
        Axis::Wavenumber => "k",
        Axis::Time => "t",
    };
    let _ = writeln!(s, "{axis},{column}");
    for (x, v) in p.grid.iter().zip(&p.values) {
        let _ = writeln!(s, "{},{}", num(*x), num(*v));
    }
    s
}

fn cmd_density(cfg: &RunConfig) -> Result<String, CliError> {
    let g = cfg.grid.as_ref().expect("density has a grid");
    let xs: Vec<f64> = grid_points(g).iter().map(|z| z * cfg.alpha).collect();
    let p = density_profile(cfg.method.expect("density has a method"), cfg.n, &xs)?;
    let p = scaled_profile(p, cfg.alpha, Axis::Position, cfg.alpha)?;
    Ok(profile_output(
        cfg,
        &p,
        "density",
        &[("l_fermi", fermi_length(cfg.n) / cfg.alpha), ("k_fermi", fermi_wavenumber(cfg.n) * cfg.alpha)],
    ))
}

#[derive(Debug, Serialize)]
struct FourierOutput {
    k_grid: Vec<f64>,
    exact: Vec<f64>,
    semiclassical: Vec<f64>,
    k_fermi: f64,
    sum_rule_exact: f64,
    sum_rule_semiclassical: f64,
    sum_rule_target: f64,
    hump: Option<HumpReport>,
    generated_by: String,
}

fn cmd_fourier(cfg: &RunConfig) -> Result<String, CliError> {
    let (n, a) = (cfg.n, cfg.alpha);
    let ks = grid_points(cfg.grid.as_ref().expect("fourier has a grid"));
    let pairs = ks
        .par_iter()
        .map(|&k| Ok((ft_exact(k / a, n)?, ft_semiclassical(k / a, n)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let hump = if n >= 10 {
        let h = hump_locate(n)?;
        Some(HumpReport {
            k_hump: h.k_hump * a,
            k_fermi: h.k_fermi * a,
            ..h
        })
    } else {
        None
    };
    let out = FourierOutput {
        exact: pairs.iter().map(|p| p.0).collect(),
        semiclassical: pairs.iter().map(|p| p.1).collect(),
        k_grid: ks,
        k_fermi: fermi_wavenumber(n) * a,
        sum_rule_exact: ft_sum_rule(n, SpectralMethod::Exact)? * a,
        sum_rule_semiclassical: ft_sum_rule(n, SpectralMethod::Semiclassical)? * a,
        sum_rule_target: 2.0 * fermi_wavenumber(n) * a,
        hump,
        generated_by: generated_by(),
    };
    if cfg.format == Format::Json {
        return Ok(json(cfg, &out));
    }
    let mut s = header(cfg);
    let _ = writeln!(s, "# k_fermi: {}", num(out.k_fermi));
    let _ = writeln!(s, "# sum_rule_exact: {}", num(out.sum_rule_exact));
    let _ = writeln!(s, "# sum_rule_semiclassical: {}", num(out.sum_rule_semiclassical));
    let _ = writeln!(s, "# sum_rule_target: {}", num(out.sum_rule_target));
    match &out.hump {
        Some(h) => {
            let _ = writeln!(s, "# hump_k: {}", num(h.k_hump));
            let _ = writeln!(s, "# hump_height: {}", num(h.height));
            let _ = writeln!(s, "# hump_height_ratio: {}", num(h.height_ratio));
        }
        None => {
            let _ = writeln!(s, "# hump: not analysed for N < 10");
        }
    }
    let _ = writeln!(s, "k,exact,semiclassical");
    for ((k, e), c) in out.k_grid.iter().zip(&out.exact).zip(&out.semiclassical) {
        let _ = writeln!(s, "{},{},{}", num(*k), num(*e), num(*c));
    }
    Ok(s)
}

fn cmd_momentum(cfg: &RunConfig) -> Result<String, CliError> {
    let ks = grid_points(cfg.grid.as_ref().expect("momentum has a grid"));
    let values = ks
        .par_iter()
        .map(|&k| momentum_density_scaled(k, cfg.n, cfg.alpha))
        .collect::<Result<Vec<_>, Error>>()?;
    let p = Profile::new(
        ks,
        values,
        ProfileMeta {
            n: cfg.n,
            method: Method::Exact,
            generated_by: generated_by(),
            alpha: cfg.alpha,
            axis: Axis::Wavenumber,
        },
    )?;
    Ok(profile_output(cfg, &p, "momentum_density", &[("k_fermi", fermi_wavenumber(cfg.n) * cfg.alpha)]))
}

fn cmd_expand(cfg: &RunConfig) -> Result<String, CliError> {
    let tau = cfg.t_scaled.expect("expand has a time");
    let a = cfg.alpha;
    let xs: Vec<f64> = grid_points(cfg.grid.as_ref().expect("expand has a grid"))
        .iter()
        .map(|z| z * a)
        .collect();
    let b = scale_factor(tau)?;
    let (p, extra) = match cfg.method.expect("expand has a method") {
        Method::Propagated => {
            let r = propagate_numeric(&xs, tau, cfg.n)?;
            (r.profile, vec![("b", b), ("error_estimate", r.error_estimate * a)])
        }
        _ => (expansion_snapshot(cfg.n, tau, &xs)?.profile, vec![("b", b)]),
    };
    let p = scaled_profile(p, a, Axis::Position, a)?;
    Ok(profile_output(cfg, &p, "density", &extra))
}

fn cmd_extrema(cfg: &RunConfig) -> Result<String, CliError> {
    let r = find_extrema(cfg.n)?;
    let a = cfg.alpha;
    let scale = |v: &[crate::analysis::Extremum]| {
        v.iter()
            .map(|e| crate::analysis::Extremum {
                x: e.x / a,
                height: e.height * a,
            })
            .collect::<Vec<_>>()
    };
    let r = ExtremaReport {
        n: r.n,
        maxima: scale(&r.maxima),
        minima: scale(&r.minima),
    };
    if cfg.format == Format::Json {
        return Ok(json(cfg, &r));
    }
    let mut s = header(cfg);
    let _ = writeln!(s, "# maxima: {}", r.maxima.len());
    let _ = writeln!(s, "# minima: {}", r.minima.len());
    let _ = writeln!(s, "kind,index,x,density");
    for (kind, list) in [("max", &r.maxima), ("min", &r.minima)] {
        for (i, e) in list.iter().enumerate() {
            let _ = writeln!(s, "{kind},{},{},{}", i + 1, num(e.x), num(e.height));
        }
    }
    Ok(s)
}

fn cmd_envelope(cfg: &RunConfig) -> Result<String, CliError> {
    let f = envelope_fit(cfg.n)?;
    let f = EnvelopeFit {
        fit_window: (f.fit_window.0 / cfg.alpha, f.fit_window.1 / cfg.alpha),
        ..f
    };
    if cfg.format == Format::Json {
        return Ok(json(cfg, &f));
    }
    let mut s = header(cfg);
    let _ = writeln!(s, "# delta: {}", num(f.delta));
    let _ = writeln!(s, "# residual: {}", num(f.residual));
    let _ = writeln!(s, "# fit_window: {},{}", num(f.fit_window.0), num(f.fit_window.1));
    let _ = writeln!(s, "# points: {}", f.points.len());
    let _ = writeln!(s, "ln_one_minus_x_over_lf,ln_amplitude");
    for (u, v) in &f.points {
        let _ = writeln!(s, "{},{}", num(*u), num(*v));
    }
    Ok(s)
}

#[derive(Debug, Serialize)]
struct FriedelOutput {
    #[serde(flatten)]
    report: FriedelReport,
    b: f64,
    expected_parity: i32,
}

fn cmd_friedel(cfg: &RunConfig) -> Result<String, CliError> {
    let tau = cfg.t_scaled.unwrap_or(0.0);
    let r = friedel_stretch(tau, cfg.n)?;
    let a = cfg.alpha;
    let out = FriedelOutput {
        report: FriedelReport {
            wavenumber: r.wavenumber * a,
            expected: r.expected * a,
            bin_width: r.bin_width * a,
            ..r
        },
        b: scale_factor(tau)?,
        expected_parity: if cfg.n.is_multiple_of(2) { 1 } else { -1 },
    };
    if cfg.format == Format::Json {
        return Ok(json(cfg, &out));
    }
    let mut s = header(cfg);
    let _ = writeln!(s, "n,b,wavenumber,expected,bin_width,parity_sign,expected_parity,prominence");
    let r = &out.report;
    let _ = writeln!(
        s,
        "{},{},{},{},{},{},{},{}",
        r.n,
        num(out.b),
        num(r.wavenumber),
        num(r.expected),
        num(r.bin_width),
        r.parity_sign,
        out.expected_parity,
        num(r.prominence)
    );
    Ok(s)
}

/// Runs a resolved configuration and returns the rendered output.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.command.as_str() {
        "density" => cmd_density(cfg),
        "fourier" => cmd_fourier(cfg),
        "momentum" => cmd_momentum(cfg),
        "expand" => cmd_expand(cfg),
        "extrema" => cmd_extrema(cfg),
        "envelope" => cmd_envelope(cfg),
        "friedel" => cmd_friedel(cfg),
        other => usage(format!("unknown command '{other}'")),
    }
}

fn run_command(cmd: &Command) -> Result<(), CliError> {
    let cfg = resolve(cmd)?;
    let text = execute(&cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(CliError::Io),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(CliError::Io)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fermi1d: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, CliError> {
        let mut v = vec!["fermi1d"];
        v.extend_from_slice(args);
        resolve(&Cli::try_parse_from(v).unwrap().command)
    }

    #[test]
    fn auto_grid_spans_fermi_length() {
        let c = cfg(&["density", "--n", "5", "--alpha", "2"]).unwrap();
        let g = c.grid.unwrap();
        assert_eq!(g.max, 1.2 * 1.5);
        assert_eq!(g.min, -g.max);
        assert!(g.auto);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(cfg(&["density", "--n", "5", "--method", "nope"]).unwrap_err().exit_code(), 2);
        assert_eq!(cfg(&["density", "--n", "5", "--method", "expanded"]).unwrap_err().exit_code(), 2);
        assert_eq!(cfg(&["density", "--n", "5", "--points", "1"]).unwrap_err().exit_code(), 2);
        assert_eq!(cfg(&["density", "--n", "5", "--min", "1", "--max", "0"]).unwrap_err().exit_code(), 2);
        assert_eq!(cfg(&["density", "--n", "0"]).unwrap_err().exit_code(), 2);
        assert_eq!(cfg(&["density", "--n", "5", "--omega-hz", "100"]).unwrap_err().exit_code(), 2);
        assert_eq!(
            cfg(&["density", "--n", "100", "--method", "bulk", "--min", "-9", "--max", "9"])
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(CliError::Numeric(Error::NotFound("hump".into())).exit_code(), 4);
        assert_eq!(CliError::Numeric(Error::Domain("x".into())).exit_code(), 3);
        assert_eq!(
            CliError::Numeric(Error::NonConvergence {
                what: "q".into(),
                best: 0.0,
                error_estimate: 1.0
            })
            .exit_code(),
            3
        );
    }

    #[test]
    fn si_units_set_alpha() {
        // ⁶Li-like mass in a 1 kHz trap
        let c = cfg(&["density", "--n", "3", "--omega-hz", "1000", "--mass-amu", "6"]).unwrap();
        let expect = (6.0 * AMU * 2.0 * std::f64::consts::PI * 1000.0 / HBAR).sqrt();
        assert!((c.alpha - expect).abs() < 1e-12 * expect);
        assert!(c.units.starts_with("SI"));
    }

    #[test]
    fn expand_time_in_seconds() {
        let c = cfg(&["expand", "--n", "3", "--omega-hz", "1", "--mass-amu", "6", "--t", "0.5"]).unwrap();
        assert!((c.t_scaled.unwrap() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn numeric_formatting_has_seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
    }
}

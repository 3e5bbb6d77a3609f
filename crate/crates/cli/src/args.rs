//! Command-line grammar and the single-token value parsers.

use auxzeta_core::auxiliary::{MethodChoice, MethodPolicy};
use auxzeta_core::ComplexValue;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "auxzeta", version, about = "R(s), zeta, Z, Y, lambda and the Mordell integral")]
pub struct Cli {
    /// Worker threads for grids and scans.
    #[arg(long, global = true, env = "AUXZETA_JOBS", value_parser = parse_jobs)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Evaluate one target at one point.
    Eval(EvalArgs),
    /// Values of a target of s on a grid (CSV).
    Grid(GridArgs),
    /// Signs of Re and Im of a target of s on a grid (CSV).
    Xray(GridArgs),
    /// Zeros of Z or Y on an interval, or of lambda or zeta in a region.
    Zeros(ZerosArgs),
    /// theta, Z and Y along the critical line (CSV).
    Table(TableArgs),
    /// Run the identity suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "R")]
    R,
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "Z")]
    Z,
    #[value(name = "Y")]
    Y,
    #[value(name = "lambda")]
    Lambda,
    #[value(name = "phi")]
    Phi,
    #[value(name = "theta3")]
    Theta3,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::R => "R",
            Target::Zeta => "zeta",
            Target::Z => "Z",
            Target::Y => "Y",
            Target::Lambda => "lambda",
            Target::Phi => "phi",
            Target::Theta3 => "theta3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PolicyArgs {
    /// Representation of R: auto, direct, reflected, hankel, kuzmin,
    /// theta_line, theta_prime or critical_real.
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    pub method: MethodChoice,

    /// Mixed absolute/relative tolerance.
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tolerance)]
    pub tol: f64,
}

impl PolicyArgs {
    pub fn policy(&self) -> MethodPolicy {
        MethodPolicy {
            tolerance: self.tol,
            method: self.method,
            ..MethodPolicy::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value = "R")]
    pub target: Target,
    /// Point for R, zeta and lambda, as `a+bi`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Option<ComplexValue>,
    /// Height for Z and Y.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// First argument of phi.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Option<ComplexValue>,
    /// Modular argument of phi and theta3.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: Option<ComplexValue>,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// R, zeta or lambda.
    #[arg(long, value_enum, default_value = "R")]
    pub target: Target,
    /// `smin:smax:tmin:tmax`.
    #[arg(long, value_parser = parse_region, allow_hyphen_values = true)]
    pub region: RegionSpec,
    /// Nodes in sigma and t, `NxM`.
    #[arg(long, value_parser = parse_grid, default_value = "81x241")]
    pub n: (usize, usize),
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ZerosArgs {
    /// Z or Y (with --interval), lambda or zeta (with --region).
    #[arg(long, value_enum)]
    pub target: Target,
    /// `t0:t1` for Z and Y.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    pub interval: Option<(f64, f64)>,
    /// Scan spacing for Z and Y.
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    /// `smin:smax:tmin:tmax` for lambda and zeta.
    #[arg(long, value_parser = parse_region, allow_hyphen_values = true)]
    pub region: Option<RegionSpec>,
    #[arg(long, value_parser = parse_grid, default_value = "81x241")]
    pub n: (usize, usize),
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// `t0:t1`.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    pub interval: (f64, f64),
    #[arg(long, default_value_t = 0.5)]
    pub step: f64,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Reduced sample of every suite.
    #[arg(long)]
    pub quick: bool,
    /// Threshold for every check (any positive value).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

fn parse_jobs(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("'{s}' is not a positive integer")),
    }
}

fn parse_method(s: &str) -> Result<MethodChoice, String> {
    s.parse().map_err(|_| {
        let tags: Vec<_> = MethodChoice::ALL.iter().map(|m| m.tag()).collect();
        format!("unknown method '{s}' (expected one of {})", tags.join(", "))
    })
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !(MethodPolicy::MIN_TOLERANCE..=MethodPolicy::MAX_TOLERANCE).contains(&tol) {
        return Err(format!(
            "tolerance {tol:e} outside [{:e}, {:e}]",
            MethodPolicy::MIN_TOLERANCE,
            MethodPolicy::MAX_TOLERANCE
        ));
    }
    Ok(tol)
}

fn parse_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && !s.contains(char::is_whitespace) => Ok(x),
        _ => Err(format!("'{s}' is not a finite real number")),
    }
}

/// `a`, `bi`, `a+bi` or `a-bi`; `i` alone stands for `1i`. No spaces.
pub fn parse_complex(s: &str) -> Result<ComplexValue, String> {
    let bad = || format!("'{s}' is not a complex literal of the form a+bi");
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s).map(|re| ComplexValue::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that does not start the literal or an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let coeff = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => parse_real(t).map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(ComplexValue::new(parse_real(&body[..k]).map_err(|_| bad())?, coeff(&body[k..])?)),
        None => Ok(ComplexValue::new(0.0, coeff(body)?)),
    }
}

fn parse_fields<const N: usize>(s: &str, what: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != N {
        return Err(format!("'{s}' is not a {what}"));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_real(p)?;
    }
    Ok(out)
}

/// `smin:smax:tmin:tmax` with `min < max`.
pub fn parse_region(s: &str) -> Result<RegionSpec, String> {
    let [sigma_min, sigma_max, t_min, t_max] = parse_fields::<4>(s, "region smin:smax:tmin:tmax")?;
    if !(sigma_min < sigma_max && t_min < t_max) {
        return Err(format!("region '{s}' needs smin < smax and tmin < tmax"));
    }
    Ok(RegionSpec {
        sigma_min,
        sigma_max,
        t_min,
        t_max,
    })
}

/// `t0:t1` with `t0 < t1`.
pub fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let [a, b] = parse_fields::<2>(s, "interval t0:t1")?;
    if !(a < b) {
        return Err(format!("interval '{s}' needs t0 < t1"));
    }
    Ok((a, b))
}

/// `NxM`, both at least 2.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("'{s}' is not a grid NxM with N, M >= 2");
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    let n: usize = a.parse().map_err(|_| bad())?;
    let m: usize = b.parse().map_err(|_| bad())?;
    if n < 2 || m < 2 {
        return Err(bad());
    }
    Ok((n, m))
}

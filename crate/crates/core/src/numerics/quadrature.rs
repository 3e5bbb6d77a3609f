//! Quadrature engines and the two contour drivers used throughout the crate.
//!
//! All engines integrate a complex-valued function of a real parameter and
//! report an error estimate made of two parts that are added, never maxed:
//!
//! * the rule estimate: for Gauss–Legendre panels the difference between a
//!   panel and its two halves, for tanh-sinh the difference between
//!   successive levels, for Gauss–Laguerre the difference between two orders;
//! * a rounding term `noise · ε · ∫|f|`, which dominates when the integral is
//!   much smaller than the integrand (oscillatory cancellation).
//!
//! Contour drivers add a truncation-tail bound on top.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{EvalResult, Method};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Quadrature rule family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    GaussLegendrePanels,
    DoubleExponential,
    GaussLaguerreRay,
}

impl QuadRule {
    pub fn tag(self) -> &'static str {
        match self {
            QuadRule::GaussLegendrePanels => "gauss_legendre_panels",
            QuadRule::DoubleExponential => "double_exponential",
            QuadRule::GaussLaguerreRay => "gauss_laguerre_ray",
        }
    }
}

/// Rule choice and resolution for a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rule: QuadRule,
    /// Nodes per panel (Gauss–Legendre), node count (Gauss–Laguerre) or
    /// maximum refinement level (tanh-sinh).
    pub order: usize,
    /// Initial number of panels; the adaptive driver refines from here.
    pub panel_count: usize,
    /// Target error, read as `tolerance · max(1, |value|)`.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rule: QuadRule::GaussLegendrePanels,
            order: 20,
            panel_count: 8,
            tolerance: 1e-13,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rule(rule: QuadRule) -> Self {
        let order = match rule {
            QuadRule::GaussLegendrePanels => 20,
            QuadRule::DoubleExponential => 8,
            QuadRule::GaussLaguerreRay => 64,
        };
        QuadratureSpec {
            rule,
            order,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 4 {
            return Err(Error::domain(format!("quadrature order {} < 4", self.order)));
        }
        if self.panel_count < 1 {
            return Err(Error::domain("quadrature panel_count must be >= 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::domain("quadrature tolerance must be positive"));
        }
        Ok(())
    }
}

/// How the integrand decays beyond the truncation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// `|f(u)| ≤ C e^{−rate·u²}`
    Gaussian { rate: f64 },
    /// `|f(u)| ≤ C e^{−rate·u}`
    Exponential { rate: f64 },
}

impl Decay {
    /// Bound on `∫_r^∞ |f|` given `|f(r)|`.
    fn tail(self, f_at_r: f64, r: f64) -> f64 {
        match self {
            Decay::Gaussian { rate } => f_at_r / (2.0 * rate * r.max(0.5)),
            Decay::Exponential { rate } => f_at_r / rate,
        }
    }
}

/// Truncation radius `√(ln(1/ε)/rate) + 2` for a Gaussian-decay integrand.
pub fn gaussian_radius(eps: f64, rate: f64) -> f64 {
    ((1.0 / eps).ln().max(1.0) / rate).sqrt() + 2.0
}

/// An infinite straight contour `anchor + u·e^{iθ}`, `u ∈ ℝ`, truncated to
/// `|u| ≤ truncation_radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineContour {
    pub anchor: Complex64,
    pub direction_angle: f64,
    pub truncation_radius: f64,
    pub decay: Decay,
}

impl LineContour {
    /// The `0↙1` line through 1/2 with direction `e^{−3πi/4}`.
    pub fn down_left(truncation_radius: f64) -> Self {
        LineContour {
            anchor: Complex64::new(0.5, 0.0),
            direction_angle: -0.75 * PI,
            truncation_radius,
            decay: Decay::Gaussian { rate: PI },
        }
    }

    pub fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.direction_angle)
    }

    pub fn point(&self, u: f64) -> Complex64 {
        self.anchor + self.direction() * u
    }
}

/// A ray `start + u·e^{iθ}`, `u ≥ 0`, truncated at `truncation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub start: Complex64,
    pub direction_angle: f64,
    pub truncation: f64,
    pub decay: Decay,
}

impl Ray {
    pub fn horizontal(start: Complex64, rate: f64, truncation: f64) -> Self {
        Ray {
            start,
            direction_angle: 0.0,
            truncation,
            decay: Decay::Exponential { rate },
        }
    }

    pub fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.direction_angle)
    }
}

/// Accuracy target for the internal engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    /// Multiplier of `ε · ∫|f|` in the rounding term.
    pub noise: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel, noise: 16.0 }
    }

    pub fn mixed(tol: f64) -> Self {
        Tolerance {
            abs: tol,
            rel: tol,
            noise: 16.0,
        }
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs.max(self.rel * value.norm())
    }
}

/// Output of an engine: value, error estimate, function evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub abs_err: f64,
    pub evals: usize,
}

impl Integral {
    pub fn scaled(self, factor: Complex64) -> Self {
        Integral {
            value: self.value * factor,
            abs_err: self.abs_err * factor.norm(),
            evals: self.evals,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Integral) -> Self {
        Integral {
            value: self.value + other.value,
            abs_err: self.abs_err + other.abs_err,
            evals: self.evals + other.evals,
        }
    }
}

// ---------------------------------------------------------------------------
// Gauss–Legendre

/// Nodes and weights on `[−1, 1]`.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Cached `n`-point Gauss–Legendre rule.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(rule) = cache.read().expect("rule cache poisoned").get(&n) {
        return rule.clone();
    }
    let rule = Arc::new(build_gauss_legendre(n));
    cache
        .write()
        .expect("rule cache poisoned")
        .entry(n)
        .or_insert(rule)
        .clone()
}

fn build_gauss_legendre(n: usize) -> GaussLegendre {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
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
    GaussLegendre { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

struct Panel {
    a: f64,
    b: f64,
    whole: Complex64,
    left: Complex64,
    right: Complex64,
    left_l1: f64,
    right_l1: f64,
}

impl Panel {
    fn err(&self) -> f64 {
        (self.whole - self.left - self.right).norm()
    }
}

fn gl_panel<F>(f: &mut F, rule: &GaussLegendre, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Complex64,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = ZERO;
    let mut l1 = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let u = mid + half * x;
        let v = f(u);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ContourSingularity {
                at: Complex64::new(u, 0.0),
            });
        }
        sum += v * *w;
        l1 += v.norm() * w;
    }
    Ok((sum * half, l1 * half.abs()))
}

/// Adaptive composite Gauss–Legendre on `[breaks[0], breaks[last]]`.
///
/// Each panel is compared with its two halves; the panel with the largest
/// difference is split until the summed differences meet the tolerance or the
/// evaluation budget runs out. The returned error is the sum of the panel
/// differences plus the rounding term. Non-finite samples raise
/// [`Error::ContourSingularity`] carrying the real parameter.
pub fn integrate_panels<F>(
    f: &mut F,
    breaks: &[f64],
    order: usize,
    tol: Tolerance,
    max_evals: usize,
) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    let rule = gauss_legendre(order);
    let mut evals = 0usize;
    let mut panels: Vec<Panel> = Vec::with_capacity(breaks.len() * 2);
    let make = |f: &mut F, a: f64, b: f64, whole: Option<Complex64>| -> Result<Panel> {
        let m = 0.5 * (a + b);
        let whole = match whole {
            Some(w) => w,
            None => gl_panel(f, &rule, a, b)?.0,
        };
        let (left, left_l1) = gl_panel(f, &rule, a, m)?;
        let (right, right_l1) = gl_panel(f, &rule, m, b)?;
        Ok(Panel {
            a,
            b,
            whole,
            left,
            right,
            left_l1,
            right_l1,
        })
    };
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            panels.push(make(f, w[0], w[1], None)?);
            evals += 3 * order;
        }
    }
    loop {
        let value: Complex64 = panels.iter().map(|p| p.left + p.right).sum();
        // Rounding is coherent within a panel and independent across panels:
        // a panel whose difference is below its own rounding floor adds in
        // quadrature, anything above it adds linearly as truncation error.
        let mut trunc = 0.0;
        let mut round_sq = 0.0;
        let mut l1_sq = 0.0;
        for p in &panels {
            let floor = tol.noise * f64::EPSILON * (p.left_l1 + p.right_l1);
            let e = p.err();
            if e > floor {
                trunc += e;
            } else {
                round_sq += e * e;
            }
            l1_sq += floor * floor;
        }
        let quad_err = trunc + round_sq.sqrt();
        let noise = l1_sq.sqrt();
        // refining below the rounding floor only burns evaluations
        if quad_err <= tol.target(value).max(noise) || evals >= max_evals {
            return Ok(Integral {
                value,
                abs_err: quad_err + noise,
                evals,
            });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p.err()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let p = panels.swap_remove(idx);
        let m = 0.5 * (p.a + p.b);
        panels.push(make(f, p.a, m, Some(p.left))?);
        panels.push(make(f, m, p.b, Some(p.right))?);
        evals += 4 * order;
    }
}

/// Evenly spaced breakpoints with roughly `width` spacing.
pub fn uniform_breaks(a: f64, b: f64, width: f64) -> Vec<f64> {
    let n = (((b - a) / width).ceil() as usize).max(1);
    (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect()
}

// ---------------------------------------------------------------------------
// tanh-sinh

/// Tanh-sinh quadrature on `[a, b]`, refining the step until successive
/// levels agree or `max_level` is reached. Tolerates algebraic endpoint
/// singularities; nodes never coincide with the endpoints.
pub fn tanh_sinh<F>(f: &mut F, a: f64, b: f64, max_level: usize, tol: Tolerance) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    // reaches nodes within ~1e-300 of the endpoints
    const T_MAX: f64 = 6.5;
    let len = b - a;
    let mut eval = |t: f64| -> Result<(Complex64, f64)> {
        let u = PI * t.sinh();
        let w = len * PI * t.cosh() / (4.0 * (0.5 * u).cosh().powi(2));
        let x = if u < 0.0 {
            a + len / (1.0 + (-u).exp())
        } else {
            b - len / (1.0 + u.exp())
        };
        if !(x > a && x < b) || w == 0.0 {
            return Ok((ZERO, 0.0));
        }
        let v = f(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ContourSingularity {
                at: Complex64::new(x, 0.0),
            });
        }
        Ok((v * w, v.norm() * w))
    };
    let mut h = 0.5;
    let mut sum = ZERO;
    let mut l1 = 0.0;
    let mut evals = 0;
    let n0 = (T_MAX / h) as i64;
    for k in -n0..=n0 {
        let (v, a1) = eval(k as f64 * h)?;
        sum += v;
        l1 += a1;
        evals += 1;
    }
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for _level in 1..=max_level.max(1) {
        h *= 0.5;
        let n = (T_MAX / h) as i64;
        let mut k = -n + if n % 2 == 0 { 1 } else { 0 };
        while k <= n {
            let (v, a1) = eval(k as f64 * h)?;
            sum += v;
            l1 += a1;
            evals += 1;
            k += 2;
        }
        let cur = sum * h;
        err = (cur - prev).norm();
        prev = cur;
        if err <= tol.target(cur) {
            break;
        }
    }
    Ok(Integral {
        value: prev,
        abs_err: err + tol.noise * f64::EPSILON * l1 * h,
        evals,
    })
}

// ---------------------------------------------------------------------------
// Gauss–Laguerre

/// Nodes `x_i` and scaled weights `w_i e^{x_i}` of the `n`-point rule, so that
/// `∫₀^∞ f ≈ Σ w_i e^{x_i} f(x_i)`.
#[derive(Debug)]
pub struct GaussLaguerre {
    pub nodes: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

pub fn gauss_laguerre(n: usize) -> Arc<GaussLaguerre> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussLaguerre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(rule) = cache.read().expect("rule cache poisoned").get(&n) {
        return rule.clone();
    }
    let rule = Arc::new(build_gauss_laguerre(n));
    cache
        .write()
        .expect("rule cache poisoned")
        .entry(n)
        .or_insert(rule)
        .clone()
}

fn build_gauss_laguerre(n: usize) -> GaussLaguerre {
    let mut nodes = Vec::with_capacity(n);
    let mut scaled_weights = Vec::with_capacity(n);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..n {
        // initial guesses for the i-th root of L_n
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut p2 = 0.0;
        let mut pp = 0.0;
        for _ in 0..200 {
            let mut p1 = 1.0;
            p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0 - z) * p2 - jf * p3) / (jf + 1.0);
            }
            pp = (nf * p1 - nf * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes.push(z);
        // w = -1 / (pp · n · p2), computed in log form then scaled by e^z
        let w = -1.0 / (pp * nf * p2);
        scaled_weights.push(w * z.exp());
    }
    GaussLaguerre {
        nodes,
        scaled_weights,
    }
}

fn laguerre_sum<F>(f: &mut F, n: usize, rate: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Complex64,
{
    let rule = gauss_laguerre(n);
    let mut sum = ZERO;
    let mut l1 = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.scaled_weights) {
        let u = x / rate;
        let v = f(u);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ContourSingularity {
                at: Complex64::new(u, 0.0),
            });
        }
        sum += v * *w;
        l1 += v.norm() * w;
    }
    Ok((sum / rate, l1 / rate))
}

/// Gauss–Laguerre on `[0, ∞)` for integrands decaying like `e^{−rate·u}`.
/// The estimate compares orders `n` and `3n/4`.
pub fn integrate_laguerre<F>(f: &mut F, n: usize, rate: f64, tol: Tolerance) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    let n = n.clamp(8, 160);
    let (hi, l1) = laguerre_sum(f, n, rate)?;
    let (lo, _) = laguerre_sum(f, (3 * n) / 4, rate)?;
    Ok(Integral {
        value: hi,
        abs_err: (hi - lo).norm() + tol.noise * f64::EPSILON * l1,
        evals: n + (3 * n) / 4,
    })
}

// ---------------------------------------------------------------------------
// Contour drivers

const MAX_EVALS: usize = 400_000;

fn run_rule<F>(f: &mut F, a: f64, b: f64, spec: &QuadratureSpec, tol: Tolerance) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    match spec.rule {
        QuadRule::GaussLegendrePanels | QuadRule::GaussLaguerreRay => {
            let width = ((b - a) / spec.panel_count as f64).min(0.5);
            integrate_panels(f, &uniform_breaks(a, b, width), spec.order, tol, MAX_EVALS)
        }
        QuadRule::DoubleExponential => {
            // split so each tanh-sinh interval stays short relative to the
            // integrand's features
            let width = ((b - a) / spec.panel_count as f64).min(2.0);
            let breaks = uniform_breaks(a, b, width);
            let mut total = Integral {
                value: ZERO,
                abs_err: 0.0,
                evals: 0,
            };
            for w in breaks.windows(2) {
                total = total.add(tanh_sinh(f, w[0], w[1], spec.order.max(6), tol)?);
            }
            Ok(total)
        }
    }
}

fn map_singularity(e: Error, point: impl Fn(f64) -> Complex64) -> Error {
    match e {
        Error::ContourSingularity { at } => Error::ContourSingularity { at: point(at.re) },
        other => other,
    }
}

/// `∫ f(x) dx` along a [`LineContour`], truncated at its radius.
///
/// `abs_err` is the rule estimate plus the rounding term plus a tail bound
/// derived from the integrand's magnitude at both truncation points and the
/// contour's declared decay.
pub fn quad_line<F>(f: F, contour: &LineContour, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let i = line_integral(f, contour, spec, Tolerance::mixed(spec.tolerance))?;
    Ok(EvalResult::new(i.value, i.abs_err, Method::Quadrature, i.evals))
}

/// [`quad_line`] with an explicit accuracy target.
pub fn line_integral<F>(f: F, contour: &LineContour, spec: &QuadratureSpec, tol: Tolerance) -> Result<Integral>
where
    F: Fn(Complex64) -> Complex64,
{
    spec.validate()?;
    let r = contour.truncation_radius;
    if !(r > 0.0) {
        return Err(Error::domain("truncation radius must be positive"));
    }
    let dir = contour.direction();
    let mut g = |u: f64| f(contour.point(u)) * dir;
    let integral =
        run_rule(&mut g, -r, r, spec, tol).map_err(|e| map_singularity(e, |u| contour.point(u)))?;
    let tail = contour.decay.tail(g(r).norm(), r) + contour.decay.tail(g(-r).norm(), r);
    Ok(Integral {
        abs_err: integral.abs_err + tail,
        ..integral
    })
}

/// `∫ f(x) dx` along a [`Ray`] from its start towards infinity.
pub fn quad_ray_decay<F>(f: F, ray: &Ray, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let i = ray_integral(f, ray, spec, Tolerance::mixed(spec.tolerance))?;
    Ok(EvalResult::new(i.value, i.abs_err, Method::Quadrature, i.evals))
}

/// [`quad_ray_decay`] with an explicit accuracy target.
pub fn ray_integral<F>(f: F, ray: &Ray, spec: &QuadratureSpec, tol: Tolerance) -> Result<Integral>
where
    F: Fn(Complex64) -> Complex64,
{
    spec.validate()?;
    let dir = ray.direction();
    let point = |u: f64| ray.start + dir * u;
    let mut g = |u: f64| f(point(u)) * dir;
    match spec.rule {
        QuadRule::GaussLaguerreRay => {
            let rate = match ray.decay {
                Decay::Exponential { rate } => rate,
                Decay::Gaussian { rate } => rate.sqrt(),
            };
            integrate_laguerre(&mut g, spec.order, rate, tol).map_err(|e| map_singularity(e, point))
        }
        _ => {
            let big = ray.truncation;
            if !(big > 0.0) {
                return Err(Error::domain("ray truncation must be positive"));
            }
            let i = run_rule(&mut g, 0.0, big, spec, tol).map_err(|e| map_singularity(e, point))?;
            let tail = ray.decay.tail(g(big).norm(), big);
            Ok(Integral {
                abs_err: i.abs_err + tail,
                ..i
            })
        }
    }
}

/// Integral of `f` over `[a, b]` with the rule chosen by `spec`.
pub fn interval_integral<F>(f: &mut F, a: f64, b: f64, spec: &QuadratureSpec, tol: Tolerance) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    spec.validate()?;
    run_rule(f, a, b, spec, tol)
}

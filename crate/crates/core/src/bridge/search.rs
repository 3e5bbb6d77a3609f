//! Grids, sign grids and zero searches.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{lambda_of_s, y_of_t, z_of_t};
use crate::auxiliary::MethodPolicy;
use crate::error::{Error, Result};
use crate::EvalResult;

/// Largest `|t|` the searches accept.
pub const T_ENVELOPE: f64 = 200.0;

/// A rectangle `[σ_min, σ_max] × [t_min, t_max]` sampled on an
/// `n_sigma × n_t` grid including its edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n_sigma: usize,
    pub n_t: usize,
}

impl Region {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64, n_sigma: usize, n_t: usize) -> Result<Self> {
        let finite = [sigma_min, sigma_max, t_min, t_max].iter().all(|x| x.is_finite());
        if !finite || !(sigma_min < sigma_max) || !(t_min < t_max) {
            return Err(Error::domain("region needs finite bounds with min < max"));
        }
        if n_sigma < 2 || n_t < 2 {
            return Err(Error::domain("region grid must be at least 2x2"));
        }
        Ok(Region {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
            n_sigma,
            n_t,
        })
    }

    pub fn sigma(&self, i: usize) -> f64 {
        self.sigma_min + (self.sigma_max - self.sigma_min) * i as f64 / (self.n_sigma - 1) as f64
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t_min + (self.t_max - self.t_min) * j as f64 / (self.n_t - 1) as f64
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.sigma(i), self.t(j))
    }

    /// Grid spacing `(Δσ, Δt)`.
    pub fn spacing(&self) -> (f64, f64) {
        (
            (self.sigma_max - self.sigma_min) / (self.n_sigma - 1) as f64,
            (self.t_max - self.t_min) / (self.n_t - 1) as f64,
        )
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.sigma_min && s.re <= self.sigma_max && s.im >= self.t_min && s.im <= self.t_max
    }

    /// Envelope error when the region reaches beyond `|t| = T_ENVELOPE`.
    pub fn check_envelope(&self) -> Result<()> {
        if self.t_min.abs().max(self.t_max.abs()) > T_ENVELOPE {
            return Err(Error::Envelope(format!("|t| beyond {T_ENVELOPE}")));
        }
        Ok(())
    }

    /// Grid indices in row-major order, `t` outer.
    fn indices(&self) -> Vec<(usize, usize)> {
        (0..self.n_t).flat_map(|j| (0..self.n_sigma).map(move |i| (i, j))).collect()
    }
}

/// One grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridValue {
    pub sigma: f64,
    pub t: f64,
    pub result: EvalResult,
}

/// Evaluate `f` on every node, concurrently; rows are `t`-outer. The first
/// failure in that order is returned instead of partial output.
pub fn grid_values<F>(region: &Region, f: F) -> Result<Vec<GridValue>>
where
    F: Fn(Complex64) -> Result<EvalResult> + Sync,
{
    region
        .indices()
        .par_iter()
        .map(|&(i, j)| {
            let s = region.point(i, j);
            f(s).map(|result| GridValue {
                sigma: s.re,
                t: s.im,
                result,
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Signs of the real and imaginary parts at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignCell {
    pub sigma: f64,
    pub t: f64,
    pub sign_re: i8,
    pub sign_im: i8,
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// The x-ray of `f`: the sign pattern of `Re f` and `Im f` on the grid.
pub fn xray_signs<F>(region: &Region, f: F) -> Result<Vec<SignCell>>
where
    F: Fn(Complex64) -> Result<EvalResult> + Sync,
{
    Ok(grid_values(region, f)?
        .into_iter()
        .map(|g| SignCell {
            sigma: g.sigma,
            t: g.t,
            sign_re: sign(g.result.value.re),
            sign_im: sign(g.result.value.im),
        })
        .collect())
}

/// Real function of `t` on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalFn {
    Z,
    Y,
}

/// A root of a real function refined by bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub t: f64,
    /// Final bracket; the function changes sign across it.
    pub bracket: (f64, f64),
    /// Function value at `t`.
    pub value: f64,
}

const BISECTION_WIDTH: f64 = 1e-9;

fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> Result<Root> {
    while b - a > BISECTION_WIDTH {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(Root {
                t: m,
                bracket: (m, m),
                value: 0.0,
            });
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let t = 0.5 * (a + b);
    Ok(Root {
        t,
        bracket: (a, b),
        value: f(t)?,
    })
}

fn scan_roots<F>(f: F, t0: f64, t1: f64, step: f64) -> Result<Vec<Root>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let n = ((t1 - t0) / step).ceil() as usize;
    let ts: Vec<f64> = (0..=n).map(|k| (t0 + k as f64 * step).min(t1)).collect();
    let vals: Vec<f64> = ts.par_iter().map(|&t| f(t)).collect::<Result<_>>()?;
    let brackets: Vec<usize> = (0..n)
        .filter(|&k| vals[k] == 0.0 || (vals[k] > 0.0) != (vals[k + 1] > 0.0) && vals[k + 1] != 0.0)
        .collect();
    let mut roots: Vec<Root> = brackets
        .par_iter()
        .map(|&k| {
            if vals[k] == 0.0 {
                Ok(Root {
                    t: ts[k],
                    bracket: (ts[k], ts[k]),
                    value: 0.0,
                })
            } else {
                bisect(&f, ts[k], ts[k + 1], vals[k])
            }
        })
        .collect::<Result<_>>()?;
    if vals[n] == 0.0 {
        roots.push(Root {
            t: ts[n],
            bracket: (ts[n], ts[n]),
            value: 0.0,
        });
    }
    Ok(roots)
}

/// Roots of `Z` or `Y` on `[t0, t1]`: a sign-change scan with spacing `step`,
/// each bracket bisected to width 1e-9.
pub fn find_zeros_1d(which: CriticalFn, t0: f64, t1: f64, step: f64, policy: &MethodPolicy) -> Result<Vec<Root>> {
    if !(t0 < t1) || !(step > 0.0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::domain("zero scan needs t0 < t1 and step > 0"));
    }
    if t0.abs().max(t1.abs()) > T_ENVELOPE {
        return Err(Error::Envelope(format!("|t| beyond {T_ENVELOPE}")));
    }
    match which {
        CriticalFn::Z => scan_roots(|t| z_of_t(t, policy), t0, t1, step),
        CriticalFn::Y => scan_roots(|t| y_of_t(t, policy), t0, t1, step),
    }
}

/// A zero found by the 2-D search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaZero {
    pub s: Complex64,
    /// `|f(s)|` at the refined point.
    pub residual: f64,
    /// Winding number of `f` around a small square centred at `s`.
    pub winding: i32,
    pub iterations: usize,
}

/// A candidate cell whose refinement failed.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateFailure {
    pub start: Complex64,
    pub error: Error,
}

/// Zeros (sorted by `t`, then `σ`) and the candidates that did not converge.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroSearch {
    pub zeros: Vec<LambdaZero>,
    pub failures: Vec<CandidateFailure>,
}

const NEWTON_MAX: usize = 60;
const WINDING_SAMPLES: usize = 32;

fn newton<F>(f: &F, start: Complex64, tol: f64) -> Result<(Complex64, f64, usize)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut s = start;
    let mut fs = f(s)?;
    for it in 1..=NEWTON_MAX {
        let h = 1e-6 * s.norm().max(1.0);
        let d = (f(s + h)? - f(s - h)?) / (2.0 * h);
        if d.norm() == 0.0 || !d.norm().is_finite() {
            return Err(Error::NonConvergence {
                what: "Newton (vanishing derivative)",
                iterations: it,
            });
        }
        let mut step = fs / d;
        let mut next = s - step;
        let mut f_next = f(next)?;
        // damp by 1/2 while |f| grows
        let mut halvings = 0;
        while f_next.norm() > fs.norm() && halvings < 30 {
            step *= 0.5;
            next = s - step;
            f_next = f(next)?;
            halvings += 1;
        }
        s = next;
        fs = f_next;
        if step.norm() <= 1e-12 * s.norm().max(1.0) || fs.norm() <= 1e-3 * tol {
            return if fs.norm() <= tol {
                Ok((s, fs.norm(), it))
            } else {
                Err(Error::NonConvergence {
                    what: "Newton (stalled above tolerance)",
                    iterations: it,
                })
            };
        }
    }
    Err(Error::NonConvergence {
        what: "Newton",
        iterations: NEWTON_MAX,
    })
}

/// Winding number of `f` around the square of half-width `h` centred at `c`,
/// from the unwrapped phase at `4 · 32` boundary samples.
fn winding<F>(f: &F, c: Complex64, h: f64, tol: f64) -> Result<i32>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let corners = [
        c + Complex64::new(-h, -h),
        c + Complex64::new(h, -h),
        c + Complex64::new(h, h),
        c + Complex64::new(-h, h),
    ];
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    let mut first = 0.0;
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        for m in 0..WINDING_SAMPLES {
            let p = a + (b - a) * (m as f64 / WINDING_SAMPLES as f64);
            let v = f(p)?;
            if v.norm() < 10.0 * tol {
                return Err(Error::NonConvergence {
                    what: "winding check (zero too close to the boundary)",
                    iterations: 0,
                });
            }
            let arg = v.arg();
            match prev {
                None => first = arg,
                Some(q) => total += wrap(arg - q),
            }
            prev = Some(arg);
        }
    }
    total += wrap(first - prev.unwrap_or(first));
    Ok((total / (2.0 * PI)).round() as i32)
}

fn wrap(d: f64) -> f64 {
    (d + PI).rem_euclid(2.0 * PI) - PI
}

/// Zeros of an analytic `f` in `region`: cells of the grid where both
/// `Re f` and `Im f` change sign seed a damped Newton iteration with a
/// central-difference derivative; each refined zero inside the region is
/// verified by a winding number. `tol` bounds the accepted `|f|`.
pub fn find_zeros_2d<F>(f: F, region: &Region, tol: f64) -> Result<ZeroSearch>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let vals: Vec<Complex64> = region
        .indices()
        .par_iter()
        .map(|&(i, j)| f(region.point(i, j)))
        .collect::<Result<_>>()?;
    let at = |i: usize, j: usize| vals[j * region.n_sigma + i];
    let mut seeds = Vec::new();
    for j in 0..region.n_t - 1 {
        for i in 0..region.n_sigma - 1 {
            let c = [at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)];
            let mixed = |g: fn(&Complex64) -> f64| {
                let pos = c.iter().any(|v| g(v) >= 0.0);
                let neg = c.iter().any(|v| g(v) <= 0.0);
                pos && neg
            };
            if mixed(|v| v.re) && mixed(|v| v.im) {
                let a = region.point(i, j);
                let b = region.point(i + 1, j + 1);
                seeds.push((a + b) / 2.0);
            }
        }
    }
    let (ds, dt) = region.spacing();
    let h = 0.5 * ds.min(dt);
    let outcomes: Vec<std::result::Result<LambdaZero, CandidateFailure>> = seeds
        .par_iter()
        .map(|&start| {
            let refine = || -> Result<LambdaZero> {
                let (s, residual, iterations) = newton(&f, start, tol)?;
                let w = winding(&f, s, h, tol)?;
                Ok(LambdaZero {
                    s,
                    residual,
                    winding: w,
                    iterations,
                })
            };
            refine().map_err(|error| CandidateFailure { start, error })
        })
        .collect();
    let mut out = ZeroSearch::default();
    for o in outcomes {
        match o {
            Ok(z) if region.contains(z.s) => {
                if !out.zeros.iter().any(|y| (y.s - z.s).norm() < 1e-7 * z.s.norm().max(1.0)) {
                    out.zeros.push(z);
                }
            }
            Ok(_) => {}
            Err(e) => out.failures.push(e),
        }
    }
    out.zeros
        .sort_by(|a, b| a.s.im.total_cmp(&b.s.im).then(a.s.re.total_cmp(&b.s.re)));
    Ok(out)
}

/// Residual accepted for a zero of `λ`.
const LAMBDA_TOL: f64 = 1e-5;

/// Zeros of `λ` in `region` (which must not contain the pole `s = 1`).
pub fn find_lambda_zero_2d(region: &Region, policy: &MethodPolicy) -> Result<ZeroSearch> {
    if region.contains(Complex64::new(1.0, 0.0)) {
        return Err(Error::domain("region contains the pole s = 1"));
    }
    region.check_envelope()?;
    find_zeros_2d(|s| Ok(lambda_of_s(s, policy)?.value), region, LAMBDA_TOL)
}

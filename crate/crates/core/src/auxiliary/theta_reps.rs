//! `R(s)` from integrals of `θ₃` and `θ₃′` along the vertical line
//! `τ = −1 + iy`, `y > 0`.
//!
//! On this line `θ₃(τ) = θ₄(iy)` is real and `θ₃′(τ) dτ = ψ(y) dy`. The
//! integrands vanish faster than any power as `y → 0⁺` and decay like
//! `e^{−πy}` as `y → ∞`. For `t = Im s > 0` the factor `τ^{s/2}` grows like
//! `e^{πt/2}` near `y = 0` while the result does not, so these forms lose
//! about `πt/(2 ln 10)` digits; the error estimate reflects it.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::MethodPolicy;
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_panels, Integral, Tolerance};
use crate::numerics::reciprocal_gamma;
use crate::theta::{psi, theta3_line};
use crate::{as_exact_integer, EvalResult, Method};

const I: Complex64 = Complex64::new(0.0, 1.0);
const MAX_EVALS: usize = 400_000;

fn tau(y: f64) -> Complex64 {
    Complex64::new(-1.0, y)
}

/// Where `ψ(y) |τ^{s/2}|` is below `e^{−80}` of its scale near `y = 0`:
/// `ψ(y) ≈ (π/2) y^{−5/2} e^{−π/(4y)}` and `|τ^{s/2}| ≤ e^{π max(−t, 0)/2}`.
fn lower_cut(s: Complex64) -> f64 {
    PI / (4.0 * (80.0 + (-s.im).max(0.0) * PI / 2.0))
}

/// Where `e^{−πy} |τ^{s/2}|` is below `e^{−80}`.
fn upper_cut(s: Complex64) -> f64 {
    let mut y = 4.0;
    while PI * y - s.re.max(0.0) / 2.0 * y.ln() + s.im * PI / 4.0 < 80.0 + s.im.abs() * PI / 4.0 {
        y += 1.0;
    }
    y
}

/// Geometric breaks from `lo` to 1, then width 1/2 up to `hi`.
fn breaks(lo: f64, hi: f64) -> Vec<f64> {
    let mut b = vec![lo];
    let mut y = lo;
    while y * 1.5 < 1.0 {
        y *= 1.5;
        b.push(y);
    }
    let n = ((hi - 1.0) / 0.5).ceil().max(1.0) as usize;
    for k in 0..=n {
        b.push(1.0 + (hi - 1.0) * k as f64 / n as f64);
    }
    b
}

fn integrate<F>(f: F, lo: f64, hi: f64, policy: &MethodPolicy, tol: Tolerance) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    let mut g = |y: f64| f(y);
    integrate_panels(&mut g, &breaks(lo, hi), policy.quad.order, tol, MAX_EVALS)
}

fn check_finite(v: Complex64, what: &str, s: Complex64) -> Result<()> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Overflow(format!("{what} at s = {s}")))
    }
}

/// `R(s) = −(e^{−πis/4}/s)(π^{s/2}/Γ(s/2)) ∫_{−1}^{−1+i∞} τ^{s/2}θ₃′(τ) dτ`.
pub fn r_theta_prime(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("theta_prime representation divides by s"));
    }
    // 1/(sΓ(s/2)) = 1/(2Γ(s/2 + 1))
    let pre = -(-I * PI * s / 4.0).exp() * (s / 2.0 * PI.ln()).exp() * reciprocal_gamma(s / 2.0 + 1.0) / 2.0;
    check_finite(pre, "theta_prime prefactor", s)?;
    let j = theta_prime_integral(s, policy, pre.norm())?;
    let value = pre * j.value;
    let abs_err = pre.norm() * j.abs_err + 8.0 * f64::EPSILON * value.norm();
    policy.accept(EvalResult::new(value, abs_err, Method::ThetaPrime, j.evals))
}

/// `J(s) = ∫_{−1}^{−1+i∞} τ^{s/2}θ₃′(τ) dτ = ∫₀^∞ (−1 + iy)^{s/2} ψ(y) dy`,
/// accurate enough for a result that multiplies it by a factor of size `scale`.
pub(crate) fn theta_prime_integral(s: Complex64, policy: &MethodPolicy, scale: f64) -> Result<Integral> {
    let half = s / 2.0;
    let f = |y: f64| (half * tau(y).ln()).exp() * psi(y).unwrap_or(0.0);
    integrate(f, lower_cut(s), upper_cut(s), policy, policy.integral_tolerance(scale, s))
}

/// `π^{−s/2}Γ(s/2)R(s) = −e^{πis/4}/s + (1/2)e^{−πis/4} ∫ τ^{s/2}(θ₃(τ) − 1) dτ/τ`.
pub fn r_theta_line(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if let Some(k @ (0 | 1)) = as_exact_integer(s) {
        return Err(Error::Pole {
            what: "theta_line representation",
            at: Complex64::new(k as f64, 0.0),
        });
    }
    let scale = (s / 2.0 * PI.ln()).exp() * reciprocal_gamma(s / 2.0);
    let outer = (I * PI * s / 4.0).exp() / s;
    let inner = 0.5 * I * (-I * PI * s / 4.0).exp();
    check_finite(scale * outer + scale * inner, "theta_line prefactor", s)?;
    let p = s / 2.0 - 1.0;
    let f = |y: f64| (p * tau(y).ln()).exp() * (theta3_line(y).unwrap_or(0.0) - 1.0);
    // the integrand tends to −τ^{s/2−1} at y = 0: start the panels at 0
    let hi = upper_cut(s);
    let tol = policy.integral_tolerance((scale * inner).norm(), s);
    let near = {
        let mut g = |y: f64| f(y);
        integrate_panels(&mut g, &[0.0, 0.01], policy.quad.order, tol, MAX_EVALS)?
    };
    let k = near.add(integrate(f, 0.01, hi, policy, tol)?);
    let value = scale * (inner * k.value - outer);
    let abs_err = (scale * inner).norm() * k.abs_err + 8.0 * f64::EPSILON * ((scale * outer).norm() + value.norm());
    policy.accept(EvalResult::new(value, abs_err, Method::ThetaLine, k.evals))
}

/// The `Re s < 0` form
/// `R(s) = (1/2)e^{−πis/4}(π^{s/2}/Γ(s/2)) ∫ τ^{s/2}θ₃(τ) dτ/τ`.
///
/// The integral is cut at `τ_Y = −1 + iY`; beyond it `θ₃ − 1` is below
/// `e^{−πY}` and `∫ τ^{s/2−1} dτ = −2τ_Y^{s/2}/s` is exact.
pub fn r_theta_line_negative(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if !(s.re < 0.0) {
        return Err(Error::domain(format!("this theta form needs Re s < 0, got s = {s}")));
    }
    let pre = 0.5 * (-I * PI * s / 4.0).exp() * (s / 2.0 * PI.ln()).exp() * reciprocal_gamma(s / 2.0);
    check_finite(pre, "theta_line prefactor", s)?;
    let p = s / 2.0 - 1.0;
    let hi = upper_cut(s);
    let f = |y: f64| I * (p * tau(y).ln()).exp() * theta3_line(y).unwrap_or(0.0);
    let tol = policy.integral_tolerance(pre.norm(), s);
    let k = integrate(f, lower_cut(s), hi, policy, tol)?;
    let tau_hi = tau(hi);
    let closed = -2.0 * (s / 2.0 * tau_hi.ln()).exp() / s;
    let dropped = 2.0 * (-PI * hi).exp() * (p * tau_hi.ln()).exp().norm() / PI;
    let value = pre * (k.value + closed);
    let abs_err = pre.norm() * (k.abs_err + dropped) + 8.0 * f64::EPSILON * value.norm();
    policy.accept(EvalResult::new(value, abs_err, Method::ThetaLine, k.evals))
}

/// `f(x, t)` and `g(x, t)` of the critical-line real form.
pub fn critical_fg(x: f64, t: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0) || !x.is_finite() || !t.is_finite() {
        return Err(Error::domain(format!("critical_fg needs finite x >= 0, got {x}")));
    }
    let l = (1.0 + x * x).ln();
    let a = x.atan();
    let f = t / 4.0 * l - a / 4.0;
    let g = if x == 0.0 { 0.0 } else { (l / 8.0 + t / 2.0 * a).exp() * psi(x)? };
    Ok((f, g))
}

/// `R(1/2 + it)` from `∫₀^∞ g(x, t) e^{if(x, t)} dx`, which equals
/// `−s e^{πis/4}π^{−s/2}Γ(s/2)R(s)`.
pub fn r_critical_real_form(t: f64, policy: &MethodPolicy) -> Result<EvalResult> {
    if !t.is_finite() {
        return Err(Error::domain("non-finite t"));
    }
    let s = Complex64::new(0.5, t);
    let pre = -(I * PI * s / 4.0).exp() * (s / 2.0 * PI.ln()).exp() * reciprocal_gamma(s / 2.0 + 1.0) / 2.0;
    check_finite(pre, "critical_real prefactor", s)?;
    let f = |x: f64| {
        let l = (1.0 + x * x).ln();
        let a = x.atan();
        Complex64::new(l / 8.0 + t / 2.0 * a, t / 4.0 * l - a / 4.0).exp() * psi(x).unwrap_or(0.0)
    };
    let j = integrate(f, lower_cut(s), upper_cut(s), policy, policy.integral_tolerance(pre.norm(), s))?;
    let value = pre * j.value;
    let abs_err = pre.norm() * j.abs_err + 8.0 * f64::EPSILON * value.norm();
    policy.accept(EvalResult::new(value, abs_err, Method::CriticalReal, j.evals))
}

//! The incomplete-gamma series for `R(s)` and its generalisation `L(τ, s)`.
//!
//! With `z = πin²` the factor `e^{−z}` is exactly `(−1)^n`, so the terms
//! behave like `(−1)^n C n^{−2}(1 + O(n^{−2}))`. The head is summed
//! directly and the tail by an Euler transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::MethodPolicy;
use crate::error::{Error, Result};
use crate::numerics::accel::euler_alternating;
use crate::numerics::incgamma::{upper_ratio_reduced, UpperGammaArgs};
use crate::numerics::kernel::principal_pow;
use crate::numerics::quadrature::{line_integral, LineContour, Tolerance};
use crate::numerics::{gaussian_radius, reciprocal_gamma};
use crate::{EvalResult, Method};

const I: Complex64 = Complex64::new(0.0, 1.0);
const EPS: f64 = f64::EPSILON;
/// Terms handed to the Euler transform.
const EULER_TERMS: usize = 64;
const MIN_HEAD: usize = 100;

/// `−π^{s/2}τ^{s/2}/(sΓ(s/2))` written with `1/Γ(s/2 + 1)`, finite at `s = 0`.
fn first_term(s: Complex64, tau: Complex64) -> (Complex64, f64) {
    let v = -principal_pow(PI * tau, s / 2.0) * reciprocal_gamma(s / 2.0 + 1.0) / 2.0;
    (v, 8.0 * EPS * (1.0 + s.norm()) * v.norm())
}

fn is_nonpositive_even(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && (s.re / 2.0).fract() == 0.0
}

/// `Q(s/2, πcin²) n^{−s}` for an odd integer `c`, with its error.
struct AlternatingTerms {
    args: UpperGammaArgs,
    s: Complex64,
    c: i64,
}

impl AlternatingTerms {
    fn term(&self, n: usize) -> Result<(Complex64, f64)> {
        let nf = n as f64;
        let z = Complex64::new(0.0, PI * self.c as f64 * nf * nf);
        let z_exp = Complex64::new(0.0, if n % 2 == 1 { PI } else { 0.0 });
        let q = upper_ratio_reduced(&self.args, z, z_exp)?;
        let ns = (-self.s * nf.ln()).exp();
        Ok((q.value * ns, q.abs_err * ns.norm()))
    }
}

fn alternating_tail(terms: &AlternatingTerms, from: usize) -> Result<(Complex64, f64, Complex64)> {
    let mut a = Vec::with_capacity(EULER_TERMS + 1);
    let mut err = 0.0f64;
    for k in 0..=EULER_TERMS {
        let n = from + k;
        let (v, e) = terms.term(n)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        a.push(v * sign);
        err = err.max(e);
    }
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let sign0 = if from % 2 == 0 { 1.0 } else { -1.0 };
    // differencing rounded terms leaves a floor of a few ε·scale
    let tol = 64.0 * EPS * scale;
    let here = euler_alternating(&a[..EULER_TERMS], tol);
    let next = euler_alternating(&a[1..], tol);
    // a floor well above rounding means the terms are not smooth in n
    if here.residual > 1e-8 * scale || next.residual > 1e-8 * scale {
        return Err(Error::AccelerationFailure(format!(
            "Euler transform stalled at {:.3e} relative to the terms from n = {from}",
            here.residual.max(next.residual) / scale
        )));
    }
    let tail = here.value * sign0;
    let tail_next = -next.value * sign0;
    // tail(N) = term_N + tail(N + 1) must hold to the accuracy claimed
    let mismatch = (tail - (a[0] * sign0 + tail_next)).norm();
    Ok((tail, here.residual + mismatch + err, a[0] * sign0))
}

fn alternating_series(
    s: Complex64,
    c: i64,
    tau: Complex64,
    policy: &MethodPolicy,
    method: Method,
) -> Result<EvalResult> {
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("the incomplete gamma series needs s != 0"));
    }
    if is_nonpositive_even(s) {
        // 1/Γ(s/2) = 0 removes the first term, and Q(−m, z) = 0
        return Ok(EvalResult::exact(Complex64::new(0.0, 0.0), method));
    }
    let terms = AlternatingTerms {
        args: UpperGammaArgs::new(s / 2.0)?,
        s,
        c,
    };
    let head_len = MIN_HEAD.max((s.im.abs() / (2.0 * PI) + 4.0).sqrt().ceil() as usize);
    let used = head_len + EULER_TERMS + 1;
    if used > policy.max_terms {
        return Err(Error::NonConvergence {
            what: "incomplete gamma series (max_terms)",
            iterations: policy.max_terms,
        });
    }
    let (first, first_err) = first_term(s, tau);
    let mut sum = first;
    let mut err = first_err;
    let mut abs_sum = first.norm();
    for n in 1..head_len {
        let (v, e) = terms.term(n)?;
        sum += v;
        err += e;
        abs_sum += v.norm();
    }
    let (tail, tail_err, _) = alternating_tail(&terms, head_len)?;
    sum += tail;
    err += tail_err + 4.0 * EPS * (abs_sum + tail.norm());
    policy.accept(EvalResult::new(sum, err, method, used))
}

/// `R(s) = −π^{s/2}e^{πis/4}/(sΓ(s/2)) + Σ_{n≥1} Q(s/2, πin²) n^{−s}`.
///
/// `s = 0` is a domain error; at `s = −2, −4, …` the value is exactly zero.
pub fn r_kuzmin(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    alternating_series(s, 1, I, policy, Method::Kuzmin)
}

/// `L(τ, s) = −π^{s/2}τ^{s/2}/(sΓ(s/2)) + Σ_{n≥1} Q(s/2, πn²τ) n^{−s}`,
/// `Re τ ≥ 0`, `τ ≠ 0`.
///
/// For `Re τ > 0` the terms decay like `e^{−πn²Re τ}` and are summed
/// directly. On the imaginary axis only odd multiples of `i` are supported;
/// there the series alternates as for `R`, and `L(i, s) = R(s)`.
pub fn lavrik_l(tau: Complex64, s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    policy.validate()?;
    if !(tau.re >= 0.0) || tau == Complex64::new(0.0, 0.0) || !tau.im.is_finite() {
        return Err(Error::domain(format!("L(tau, s) needs Re tau >= 0 and tau != 0, got {tau}")));
    }
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("L(tau, s) needs s != 0"));
    }
    if tau.re == 0.0 {
        let c = tau.im;
        if c.fract() == 0.0 && c.abs() < 1e9 && (c as i64).rem_euclid(2) == 1 {
            return alternating_series(s, c as i64, tau, policy, Method::Lavrik);
        }
        return Err(Error::AccelerationFailure(format!(
            "tau = {tau} on the imaginary axis is not an odd multiple of i"
        )));
    }
    if is_nonpositive_even(s) {
        return Ok(EvalResult::exact(Complex64::new(0.0, 0.0), Method::Lavrik));
    }
    let args = UpperGammaArgs::new(s / 2.0)?;
    let (first, first_err) = first_term(s, tau);
    let mut sum = first;
    let mut err = first_err;
    let mut abs_sum = first.norm();
    let mut small = 0;
    let mut n = 0usize;
    loop {
        n += 1;
        if n > policy.max_terms {
            return Err(Error::NonConvergence {
                what: "L(tau, s) series",
                iterations: policy.max_terms,
            });
        }
        let nf = n as f64;
        let z = PI * nf * nf * tau;
        let q = upper_ratio_reduced(&args, z, z)?;
        let ns = (-s * nf.ln()).exp();
        let v = q.value * ns;
        sum += v;
        abs_sum += v.norm();
        err += q.abs_err * ns.norm();
        // past z ≈ a the terms shrink faster than geometrically
        if v.norm() <= 0.01 * EPS * sum.norm().max(1e-300) && z.re > args.a.norm() + 4.0 {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    err += 4.0 * EPS * abs_sum;
    policy.accept(EvalResult::new(sum, err, Method::Lavrik, n))
}

/// Both sides of the single-term identity
/// `∫_{0↙1} x^{1−s}e^{πix²}/(x² − n²) dx = (−1)^n (πi/n^s) Q(s/2, πin²)`:
/// the quadrature of the left and the incomplete-gamma value of the right.
pub fn kuzmin_term_identity(n: u32, s: Complex64) -> Result<(EvalResult, Complex64)> {
    if n == 0 {
        return Err(Error::domain("the identity holds for n >= 1"));
    }
    let nf = n as f64;
    let radius = gaussian_radius(1e-18, PI) + 0.75 * s.norm().sqrt();
    let contour = LineContour::down_left(radius);
    let f = |x: Complex64| ((1.0 - s) * x.ln() + I * PI * x * x).exp() / (x * x - nf * nf);
    let spec = crate::QuadratureSpec::default();
    let lhs = line_integral(f, &contour, &spec, Tolerance::mixed(1e-13))?;
    let args = UpperGammaArgs::new(s / 2.0)?;
    let z = Complex64::new(0.0, PI * nf * nf);
    let q = upper_ratio_reduced(&args, z, Complex64::new(0.0, if n % 2 == 1 { PI } else { 0.0 }))?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = q.value * (-s * nf.ln()).exp() * (PI * I) * sign;
    Ok((EvalResult::new(lhs.value, lhs.abs_err, Method::Quadrature, lhs.evals), rhs))
}

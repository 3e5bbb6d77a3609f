//! `ζ` rebuilt from `R`, the phase `ϑ`, the real functions `Z` and `Y` on the
//! critical line, `λ`, and zero searches.

mod search;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::auxiliary::{r_eval, theta_prime_integral, MethodPolicy};
use crate::error::{Error, Result};
use crate::numerics::{complex_log_gamma, reciprocal_gamma};
use crate::{as_exact_integer, EvalResult, Method};

pub use search::{
    find_lambda_zero_2d, find_zeros_1d, find_zeros_2d, grid_values, xray_signs, CandidateFailure, CriticalFn,
    GridValue, LambdaZero, Region, Root, SignCell, ZeroSearch, T_ENVELOPE,
};

const I: Complex64 = Complex64::new(0.0, 1.0);
const EPS: f64 = f64::EPSILON;

/// `χ(s)` with a relative error estimate.
fn chi_detailed(s: Complex64) -> Result<(Complex64, f64)> {
    if let Some(k) = as_exact_integer(s) {
        if k >= 1 && k % 2 == 1 {
            return Err(Error::Pole { what: "chi", at: s });
        }
        if k <= 0 && k % 2 == 0 {
            // 1/Γ(s/2) = 0
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
    }
    let lg_num = complex_log_gamma((1.0 - s) / 2.0)?;
    let lg_den = complex_log_gamma(s / 2.0)?;
    let expo = (s - 0.5) * PI.ln() + lg_num - lg_den;
    let value = expo.exp();
    let rel = EPS * (8.0 + lg_num.norm() + lg_den.norm() + s.norm() * PI.ln());
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow(format!("chi({s})")));
    }
    Ok((value, rel))
}

/// `χ(s) = π^{s−1/2}Γ((1−s)/2)/Γ(s/2)`; zero at `s = 0, −2, …`, pole at odd `s ≥ 1`.
pub fn chi(s: Complex64) -> Result<Complex64> {
    Ok(chi_detailed(s)?.0)
}

/// `χ(s)·conj(R(1 − s̄))`.
///
/// At odd `s ≥ 3` the pole of `χ` meets the zero `R(1 − s) = 0`; there the
/// product is taken from the `θ₃′` integral with `Γ((1−s)/2)` cancelled
/// analytically.
fn chi_conj_r(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if let Some(k) = as_exact_integer(s) {
        if k == 1 {
            return Err(Error::Pole { what: "zeta", at: s });
        }
        if k >= 3 && k % 2 == 1 {
            return chi_conj_r_cancelled(s, policy);
        }
    }
    let (c, rel) = chi_detailed(s)?;
    if c == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult::exact(c, Method::ZetaBridge));
    }
    let w = Complex64::new(1.0, 0.0) - s.conj();
    let r = r_eval(w, policy)?;
    let value = c * r.value.conj();
    let abs_err = c.norm() * r.abs_err + value.norm() * rel;
    Ok(EvalResult::new(value, abs_err, Method::ZetaBridge, r.terms_or_nodes))
}

/// With `w = 1 − s` and `R(w) = −e^{−πiw/4}π^{w/2}J(w)/(wΓ(w/2))`,
/// `χ(s)·conj(R(1 − s̄)) = −π^{s−1/2+w/2}e^{πiw/4}conj(J(w̄))/(w Γ(s/2))`.
fn chi_conj_r_cancelled(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    let w = Complex64::new(1.0, 0.0) - s;
    let pre = -((s - 0.5 + w / 2.0) * PI.ln() + I * PI * w / 4.0).exp() * reciprocal_gamma(s / 2.0) / w;
    let j = theta_prime_integral(w.conj(), policy, pre.norm())?;
    let value = pre * j.value.conj();
    Ok(EvalResult::new(value, pre.norm() * j.abs_err, Method::ZetaBridge, j.evals))
}

/// `ζ(s) = R(s) + χ(s)·conj(R(1 − s̄))`, `s ≠ 1`.
///
/// Below the real axis `R` is exponentially large and the two terms cancel,
/// so `ζ(s) = conj(ζ(s̄))` is used there.
pub fn zeta_via_r(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if s.im < 0.0 {
        let r = zeta_via_r(s.conj(), policy)?;
        return Ok(EvalResult { value: r.value.conj(), ..r });
    }
    if as_exact_integer(s) == Some(1) {
        return Err(Error::Pole { what: "zeta", at: s });
    }
    let r = r_eval(s, policy)?;
    let g = chi_conj_r(s, policy)?;
    let value = r.value + g.value;
    let abs_err = r.abs_err + g.abs_err + EPS * (r.value.norm() + g.value.norm());
    Ok(EvalResult::new(value, abs_err, Method::ZetaBridge, r.terms_or_nodes + g.terms_or_nodes))
}

/// `λ(s) = −i(R(s) − χ(s)·conj(R(1 − s̄))) = −i(2R(s) − ζ(s))`, `s ≠ 1`.
pub fn lambda_of_s(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if as_exact_integer(s) == Some(1) {
        return Err(Error::Pole { what: "lambda", at: s });
    }
    let r = r_eval(s, policy)?;
    let g = chi_conj_r(s, policy)?;
    let value = -I * (r.value - g.value);
    let abs_err = r.abs_err + g.abs_err + EPS * (r.value.norm() + g.value.norm());
    Ok(EvalResult::new(value, abs_err, Method::ZetaBridge, r.terms_or_nodes + g.terms_or_nodes))
}

/// `ϑ(t) = Im log Γ(1/4 + it/2) − (t/2) log π`, continuous in `t`.
pub fn theta_phase(t: f64) -> f64 {
    let lg = complex_log_gamma(Complex64::new(0.25, t / 2.0)).expect("1/4 + it/2 is never a pole");
    lg.im - t / 2.0 * PI.ln()
}

/// `Z(t)`, `Y(t)` and `ϑ(t)` at one height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub t: f64,
    pub z: f64,
    pub y: f64,
    pub theta: f64,
    /// Bound on the error of `z` and `y`.
    pub abs_err: f64,
}

/// The rotations `e^{iϑ}ζ(1/2+it)` and `e^{iϑ}λ(1/2+it)`, which are real.
fn rotated(t: f64, policy: &MethodPolicy) -> Result<(Complex64, Complex64, f64)> {
    let s = Complex64::new(0.5, t);
    let theta = theta_phase(t);
    let rot = Complex64::from_polar(1.0, theta);
    let r = r_eval(s, policy)?;
    let g = chi_conj_r(s, policy)?;
    let zc = rot * (r.value + g.value);
    let yc = rot * (-I) * (r.value - g.value);
    let err = r.abs_err + g.abs_err;
    for v in [zc, yc] {
        let requested = 1e-9 * v.norm().max(1.0) + 4.0 * err;
        if v.im.abs() > requested {
            return Err(Error::ToleranceNotMet {
                method: Method::ZetaBridge,
                achieved: v.im.abs(),
                requested,
            });
        }
    }
    Ok((zc, yc, err))
}

/// `Z(t)`, `Y(t)` and `ϑ(t)`. `Z` is even; for `t < 0` it is taken at `−t`,
/// where it is not the difference of two exponentially large terms.
pub fn critical_point(t: f64, policy: &MethodPolicy) -> Result<CriticalPoint> {
    if !t.is_finite() {
        return Err(Error::domain("non-finite t"));
    }
    let (zc, yc, err) = rotated(t, policy)?;
    let (z, z_err) = if t < 0.0 {
        let (zr, _, e) = rotated(-t, policy)?;
        (zr.re, e)
    } else {
        (zc.re, err)
    };
    Ok(CriticalPoint {
        t,
        z,
        y: yc.re,
        theta: theta_phase(t),
        abs_err: err.max(z_err),
    })
}

/// `Z(t) = 2 Re(e^{iϑ(t)}R(1/2 + it)) = e^{iϑ(t)}ζ(1/2 + it)`.
pub fn z_of_t(t: f64, policy: &MethodPolicy) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("non-finite t"));
    }
    Ok(rotated(t.abs(), policy)?.0.re)
}

/// `Y(t) = 2 Im(e^{iϑ(t)}R(1/2 + it)) = e^{iϑ(t)}λ(1/2 + it)`.
pub fn y_of_t(t: f64, policy: &MethodPolicy) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("non-finite t"));
    }
    Ok(rotated(t, policy)?.1.re)
}

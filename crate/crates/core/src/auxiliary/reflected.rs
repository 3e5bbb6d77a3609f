//! `R(s)` for `Re s < 0` from the integral along the positive real axis.
//!
//! On `[0, 1/2]` the integrand `y^{−s}e^{−πy²}/sin(πωy)` is expanded in
//! powers of `y` and integrated term by term, which disposes of the
//! endpoint singularity exactly. The rest is ordinary quadrature.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::MethodPolicy;
use crate::error::{Error, Result};
use crate::numerics::kernel::over_sin;
use crate::numerics::quadrature::interval_integral;
use crate::numerics::zeta_even;
use crate::{EvalResult, Method};

const I: Complex64 = Complex64::new(0.0, 1.0);
const SPLIT: f64 = 0.5;
const SERIES_LEN: usize = 60;

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, PI / 4.0)
}

/// `c_n` with `e^{−πy²} πωy / sin(πωy) = Σ c_n y^{2n}`.
fn coefficients() -> &'static [Complex64] {
    static C: OnceLock<Vec<Complex64>> = OnceLock::new();
    C.get_or_init(|| {
        // x / sin x = Σ 4(2^{2k−1} − 1) ζ(2k) (x / 2π)^{2k}, and (πω/2π)² = i/4
        let d: Vec<Complex64> = (0..SERIES_LEN)
            .map(|k| {
                let z = zeta_even(k as u32).expect("table covers the series length");
                let c = 4.0 * (2f64.powi(2 * k as i32 - 1) - 1.0) * z * 0.25f64.powi(k as i32);
                I.powu(k as u32) * c
            })
            .collect();
        let mut e = vec![1.0f64; SERIES_LEN];
        for j in 1..SERIES_LEN {
            e[j] = e[j - 1] * (-PI) / j as f64;
        }
        (0..SERIES_LEN)
            .map(|n| (0..=n).map(|k| d[k] * e[n - k]).sum())
            .collect()
    })
}

/// `∫₀^{1/2} y^{−s}e^{−πy²}/sin(πωy) dy` term by term.
fn head(s: Complex64) -> (Complex64, f64) {
    let c = coefficients();
    let ln_split = SPLIT.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut small = 0;
    let mut last = f64::INFINITY;
    for (n, cn) in c.iter().enumerate() {
        let p = 2.0 * n as f64 - s;
        let t = cn * (p * ln_split).exp() / p;
        sum += t;
        abs_sum += t.norm();
        last = t.norm();
        if last <= 1e-18 * sum.norm() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    let scale = 1.0 / (PI * omega());
    let err = (last + 8.0 * f64::EPSILON * abs_sum) * scale.norm();
    (sum * scale, err)
}

/// Upper cut where `y^{−σ}e^{−πy² − πy/√2}` has dropped below `e^{−45}`.
fn upper_cut(sigma: f64) -> f64 {
    let mut y = 2.0;
    while PI * y * y + PI * y * FRAC_1_SQRT_2 + sigma * y.ln() < 45.0 {
        y += 0.25;
    }
    y
}

/// `R(s) = ω e^{πis/4} sin(πs/2) ∫₀^∞ y^{−s}e^{−πy²}/sin(πωy) dy`, `Re s < 0`.
pub fn r_reflected(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if !(s.re < 0.0) {
        return Err(Error::domain(format!("reflected integral needs Re s < 0, got s = {s}")));
    }
    let w = omega();
    let pre = w * (I * PI * s / 4.0).exp() * (PI * s / 2.0).sin();
    if !(pre.re.is_finite() && pre.im.is_finite()) {
        return Err(Error::Overflow(format!("reflected prefactor at s = {s}")));
    }
    let (h, h_err) = head(s);
    let big = upper_cut(s.re);
    let mut f = |y: f64| over_sin(-s * y.ln() - PI * y * y, PI * w * y);
    let tol = policy.integral_tolerance(pre.norm(), s);
    let tail = interval_integral(&mut f, SPLIT, big, &policy.quad, tol)?;
    let beyond = f(big).norm() / (2.0 * PI * big);
    let value = pre * (h + tail.value);
    let abs_err = pre.norm() * (h_err + tail.abs_err + beyond);
    policy.accept(EvalResult::new(value, abs_err, Method::Reflected, tail.evals + SERIES_LEN))
}

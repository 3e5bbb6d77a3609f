//! `R(s)` from the Hankel-contour integral, valid off the odd integers.
//!
//! The contour is the circle `|y| = 3/4` together with both banks of
//! `[3/4, ∞)`; the banks differ by the factor `e^{−2πis}` and are combined
//! into one real integral.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::MethodPolicy;
use crate::error::{Error, Result};
use crate::numerics::kernel::{ln_one_plus_exp, over_two_i_sin};
use crate::numerics::quadrature::interval_integral;
use crate::{as_exact_integer, EvalResult, Method};

const I: Complex64 = Complex64::new(0.0, 1.0);
// the kernel's nearest zero is at |y| = 1
const RADIUS: f64 = 0.75;

fn upper_cut(sigma: f64) -> f64 {
    let mut y = 2.0;
    while PI * y * y + PI * y * FRAC_1_SQRT_2 + sigma * y.ln() < 45.0 {
        y += 0.25;
    }
    y
}

/// `R(s) = −ω e^{7πis/4}/(1 + e^{πis}) ∫_C y^{−s}e^{−πy²}/(2i sin πωy) dy`
/// with `0 < arg y < 2π`.
pub fn r_hankel(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if let Some(k) = as_exact_integer(s) {
        if k.rem_euclid(2) == 1 {
            return Err(Error::Pole {
                what: "Hankel prefactor 1/(1 + e^{πis})",
                at: s,
            });
        }
    }
    let w = Complex64::from_polar(1.0, PI / 4.0);
    let pre = -w * (7.0 * PI * I * s / 4.0 - ln_one_plus_exp(PI * I * s)).exp();
    let banks = (-2.0 * PI * I * s).exp() - 1.0;
    let bank_pre = pre * banks;
    if !(bank_pre.re.is_finite() && bank_pre.im.is_finite() && pre.re.is_finite() && pre.im.is_finite()) {
        return Err(Error::Overflow(format!("Hankel prefactor at s = {s}")));
    }

    let ln_r = RADIUS.ln();
    let mut circle = |theta: f64| {
        let y = Complex64::from_polar(RADIUS, theta);
        let log_y = Complex64::new(ln_r, theta);
        over_two_i_sin(-s * log_y - PI * y * y, w * y) * (I * y)
    };
    let c = interval_integral(&mut circle, 0.0, 2.0 * PI, &policy.quad, policy.integral_tolerance(pre.norm(), s))?;

    let big = upper_cut(s.re);
    let mut bank = |y: f64| over_two_i_sin(-s * y.ln() - PI * y * y, w * y);
    let b = interval_integral(&mut bank, RADIUS, big, &policy.quad, policy.integral_tolerance(bank_pre.norm(), s))?;
    let beyond = bank(big).norm() / (2.0 * PI * big);

    let value = pre * c.value + bank_pre * b.value;
    let abs_err = pre.norm() * c.abs_err + bank_pre.norm() * (b.abs_err + beyond);
    policy.accept(EvalResult::new(value, abs_err, Method::Hankel, c.evals + b.evals))
}

//! `R(s)` from its defining integral along the line through 1/2 with
//! direction `e^{−3πi/4}`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::MethodPolicy;
use crate::error::Result;
use crate::numerics::kernel::over_two_i_sin;
use crate::numerics::quadrature::{line_integral, LineContour};
use crate::{EvalResult, Method};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest radius (on a 1/4 grid) past which the integrand is below `e^{−42}`
/// of its scale. `|x^{−s}| ≤ e^{3π|t|/4}` on the line and the kernel decays
/// like `e^{−π(u² − u/√2)}`.
fn truncation_radius(s: Complex64) -> f64 {
    let mut r = 2.0;
    while PI * (r * r - r * FRAC_1_SQRT_2) - 2.4 * s.im.abs() - s.re.abs() * (1.0 + r).ln() < 42.0 {
        r += 0.25;
    }
    r
}

/// `R(s) = ∫ x^{−s} e^{πix²} / (e^{πix} − e^{−πix}) dx` along `0↙1`.
pub fn r_direct(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    let contour = LineContour::down_left(truncation_radius(s));
    let f = |x: Complex64| over_two_i_sin(-s * x.ln() + I * PI * x * x, x);
    let i = line_integral(f, &contour, &policy.quad, policy.integral_tolerance(1.0, s))?;
    policy.accept(EvalResult::new(i.value, i.abs_err, Method::Direct, i.evals))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let p = MethodPolicy::default();
        let r = r_direct(Complex64::new(0.0, 0.0), &p).unwrap();
        assert!((r.value - Complex64::new(-0.5, 0.0)).norm() < 1e-12, "{}", r.value);
        let r = r_direct(Complex64::new(2.0, 0.0), &p).unwrap();
        let want = Complex64::new(-PI * PI / 12.0, -PI / 2.0);
        assert!((r.value - want).norm() < 1e-12, "{}", r.value);
        // mpmath quadrature of the same integral
        let r = r_direct(Complex64::new(0.5, 10.0), &p).unwrap();
        let want = Complex64::new(0.793999477371032, 0.231012165037724);
        assert!((r.value - want).norm() < 1e-10, "{}", r.value);
        assert!(r.abs_err < 1e-9);
    }

    #[test]
    fn exponentially_large_below_the_axis() {
        let p = MethodPolicy::default();
        let r = r_direct(Complex64::new(0.5, -10.0), &p).unwrap();
        let want = Complex64::new(-6138.9, 82239.3);
        assert!((r.value - want).norm() < 0.1, "{}", r.value);
    }
}

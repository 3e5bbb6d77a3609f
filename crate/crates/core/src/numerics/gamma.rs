//! Principal-branch complex log-gamma and the reciprocal gamma function.
//!
//! `log Γ` is evaluated by the Stirling series after shifting the argument
//! to the right with the recurrence `log Γ(z) = log Γ(z + N) − Σ log(z + k)`.
//! With principal logarithms on every factor this reproduces the principal
//! branch of `log Γ`, i.e. the analytic continuation from the positive real
//! axis into the plane slit along `(−∞, 0]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2k} / (2k (2k − 1))` for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `log Γ(z)`.
pub fn complex_log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("non-finite argument {z}")));
    }
    if is_gamma_pole(z) {
        return Err(Error::Pole { what: "gamma", at: z });
    }
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    // Stirling is accurate to ~1e-19 once |w| >= 10 and Re w > 0.
    let target = if z.im.abs() >= 10.0 { 0.5 } else { 10.0 };
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < target {
        shift += w.ln();
        w += 1.0;
    }
    stirling(w) - shift
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        corr += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + corr
}

/// `1 / Γ(z)`, an entire function: exactly zero at the poles of Γ.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if is_gamma_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    (-log_gamma_unchecked(z)).exp()
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(complex_log_gamma(z)?.exp())
}

//! Small building blocks shared by the contour integrands.

use std::f64::consts::PI;

use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `x^p` on the principal branch, `arg x ∈ (−π, π]`.
#[inline]
pub fn principal_pow(x: Complex64, p: Complex64) -> Complex64 {
    (p * x.ln()).exp()
}

/// `log y` with `arg y ∈ [0, 2π)`, the branch used on the Hankel contour.
#[inline]
pub fn hankel_log(y: Complex64) -> Complex64 {
    let mut arg = y.im.atan2(y.re);
    if arg < 0.0 {
        arg += 2.0 * PI;
    }
    Complex64::new(y.norm().ln(), arg)
}

/// `y^p` with `arg y ∈ [0, 2π)`.
#[inline]
pub fn hankel_pow(y: Complex64, p: Complex64) -> Complex64 {
    (p * hankel_log(y)).exp()
}

/// `exp(log_num) / (e^{πix} − e^{−πix})` without overflow.
///
/// The dominant exponential of the denominator is folded into the
/// numerator's exponent, so the result is finite whenever the true value is
/// representable. Returns a non-finite value only at the integer poles.
#[inline]
pub fn over_two_i_sin(log_num: Complex64, x: Complex64) -> Complex64 {
    let pix = I * PI * x;
    if x.im < 0.0 {
        // |e^{πix}| > 1
        (log_num - pix).exp() / (1.0 - (-2.0 * pix).exp())
    } else {
        -(log_num + pix).exp() / (1.0 - (2.0 * pix).exp())
    }
}

/// `exp(log_num) / sin w` without overflow.
#[inline]
pub fn over_sin(log_num: Complex64, w: Complex64) -> Complex64 {
    // sin w = (e^{iw} − e^{−iw}) / 2i
    over_two_i_sin(log_num, w / PI) * 2.0 * I
}

/// `ln(1 + e^w)` evaluated without overflow.
#[inline]
pub fn ln_one_plus_exp(w: Complex64) -> Complex64 {
    if w.re > 0.0 {
        w + (1.0 + (-w).exp()).ln()
    } else {
        (1.0 + w.exp()).ln()
    }
}

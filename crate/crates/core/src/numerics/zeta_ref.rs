//! Euler–Maclaurin evaluation of ζ(s), an oracle independent of R.

use num_complex::Complex64;

use super::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::{EvalResult, Method};

const MAX_CORRECTIONS: usize = 40;

/// `ζ(s)` by Euler–Maclaurin summation.
pub fn zeta_reference(s: Complex64) -> Result<Complex64> {
    Ok(zeta_reference_detailed(s)?.value)
}

/// `ζ(s)` with error estimate and the number of terms spent.
///
/// Sums `n^{−s}` for `n < N` with `N = 10 + ⌈0.6|s|⌉`, then adds the integral,
/// half-endpoint and up to 40 Bernoulli corrections. The error estimate is
/// the first omitted correction scaled by `|s + 2M + 1| / (Re s + 2M + 1)`,
/// the standard remainder bound, plus rounding.
pub fn zeta_reference_detailed(s: Complex64) -> Result<EvalResult> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("non-finite argument to zeta_reference"));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { what: "zeta", at: s });
    }
    let n_big = 10 + (0.6 * s.norm()).ceil() as usize;
    let nf = n_big as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for n in 1..n_big {
        let t = (-s * (n as f64).ln()).exp();
        sum += t;
        abs_sum += t.norm();
    }
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    // T_k = B_2k/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_pow / nf;
    let mut last = f64::INFINITY;
    let mut terms = n_big;
    for k in 1..=MAX_CORRECTIONS {
        let b = bernoulli(2 * k).expect("index within table");
        let t = rising * npow * (b / fact);
        let tn = t.norm();
        if tn <= f64::EPSILON * 0.01 * sum.norm() || tn > last {
            last = tn.min(last);
            break;
        }
        sum += t;
        last = tn;
        terms += 1;
        let kk = 2.0 * k as f64;
        rising *= (s + kk - 1.0) * (s + kk);
        fact *= (kk + 1.0) * (kk + 2.0);
        npow /= nf * nf;
    }
    let m = (terms - n_big) as f64;
    let remainder = last * (s + 2.0 * m + 1.0).norm() / (s.re + 2.0 * m + 1.0).max(1.0);
    let abs_err = remainder + 8.0 * f64::EPSILON * (abs_sum + sum.norm());
    Ok(EvalResult::new(sum, abs_err, Method::EulerMaclaurin, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn known_values() {
        let cases = [
            (Complex64::new(2.0, 0.0), Complex64::new(PI * PI / 6.0, 0.0)),
            (Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0)),
            (Complex64::new(-1.0, 0.0), Complex64::new(-1.0 / 12.0, 0.0)),
            (Complex64::new(4.0, 0.0), Complex64::new(PI.powi(4) / 90.0, 0.0)),
            (Complex64::new(-2.0, 0.0), Complex64::new(0.0, 0.0)),
        ];
        for (s, v) in cases {
            let z = zeta_reference_detailed(s).unwrap();
            assert!((z.value - v).norm() <= z.abs_err, "s={s}: {} ± {}", z.value, z.abs_err);
            assert!(z.abs_err < 1e-11);
        }
    }

    #[test]
    fn first_zero() {
        let z = zeta_reference(Complex64::new(0.5, 14.134725141734693)).unwrap();
        assert!(z.norm() < 1e-12, "{z}");
    }

    #[test]
    fn pole() {
        assert!(matches!(zeta_reference(Complex64::new(1.0, 0.0)), Err(Error::Pole { .. })));
    }
}

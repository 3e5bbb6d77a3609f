//! `R` at even integers and at negative odd integers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{zeta_even, ZETA_EVEN_MAX_K};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn check(n: u32) -> Result<()> {
    if n > ZETA_EVEN_MAX_K {
        return Err(Error::domain(format!("closed form needs n <= {ZETA_EVEN_MAX_K}, got {n}")));
    }
    Ok(())
}

/// `R(2n)` for `n ≥ 0`.
pub fn r_even_closed(n: u32) -> Result<Complex64> {
    check(n)?;
    let mut sum = Complex64::new(0.0, 0.0);
    // (πi)^{n−k}/(n−k)! for k = n, n−1, …
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..=n {
        let k = n - j;
        if j > 0 {
            p *= PI * I / j as f64;
        }
        // 2(2^{2k−1} − 1)/2^{2k}
        let c = 1.0 - 2.0 * 0.25f64.powi(k as i32);
        sum += p * (c * zeta_even(k)?);
    }
    Ok(-sum)
}

/// `R(1 − 2n)` for `n ≥ 1`.
pub fn r_odd_negative_closed(n: u32) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::domain("r_odd_negative_closed needs n >= 1"));
    }
    check(n)?;
    let four_pi = 4.0 * PI;
    let sign = |k: u32| if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut head = sign(n) * 4.0 * (4f64.powi(n as i32) - 1.0) * zeta_even(n)? / four_pi.powi(2 * n as i32);
    let mut body = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let m = n - k;
        let fact: f64 = (1..=m).map(|j| j as f64).product();
        let c = sign(k) * (2f64.powi(2 * k as i32 - 1) - 1.0) * zeta_even(k)?;
        body += I.powu(m) * (c / (fact * four_pi.powi((n + k) as i32)));
    }
    let scale: f64 = (1..2 * n).map(|j| j as f64).product();
    head *= scale;
    Ok(Complex64::new(head, 0.0) + body * (4.0 * scale))
}

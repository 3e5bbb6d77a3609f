//! Euler transform for alternating series.

use num_complex::Complex64;

/// Result of summing `Σ_{k≥0} (−1)^k a_k` from finitely many `a_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceleratedSum {
    pub value: Complex64,
    /// Size of the last transformed term used, plus rounding.
    pub residual: f64,
    pub terms: usize,
}

/// Euler transform `Σ_j (−1)^j Δ^j a_0 / 2^{j+1}` with forward differences
/// `Δa_k = a_{k+1} − a_k`.
///
/// Summation stops once a transformed term drops below `tol` twice in a row,
/// once the transformed terms stop decreasing for three steps (the rounding
/// floor of the differences), or when the supplied terms run out. For a
/// smooth `a_k` the transformed terms decay geometrically; the residual is
/// the largest of the last few.
pub fn euler_alternating(a: &[Complex64], tol: f64) -> AcceleratedSum {
    let mut diffs: Vec<Complex64> = a.to_vec();
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.5;
    let mut sign = 1.0;
    let mut last = f64::INFINITY;
    let mut recent = [f64::INFINITY; 3];
    let mut small = 0;
    let mut rising = 0;
    let mut used = 0;
    let max_abs = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    while !diffs.is_empty() {
        let t = diffs[0] * (sign * scale);
        value += t;
        used += 1;
        let size = t.norm();
        rising = if size >= last { rising + 1 } else { 0 };
        last = size;
        recent.rotate_left(1);
        recent[2] = size;
        if last <= tol {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        if rising >= 3 {
            break;
        }
        for k in 0..diffs.len() - 1 {
            diffs[k] = diffs[k + 1] - diffs[k];
        }
        diffs.pop();
        scale *= 0.5;
        sign = -sign;
    }
    AcceleratedSum {
        value,
        residual: recent.iter().copied().filter(|x| x.is_finite()).fold(last, f64::max)
            + 4.0 * f64::EPSILON * max_abs * used as f64,
        terms: used,
    }
}

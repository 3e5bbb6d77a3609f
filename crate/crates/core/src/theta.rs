//! Jacobi theta functions of the nome `q = e^{πiτ}` and the real function ψ.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{EvalResult, Method};

const EPS: f64 = f64::EPSILON;

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauPoint {
    tau: Complex64,
}

impl TauPoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::domain(format!("tau = {tau} is not in the upper half-plane")));
        }
        Ok(TauPoint { tau })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// `q = e^{πiτ}`.
    pub fn nome(&self) -> Complex64 {
        q_pow(self.tau, 1.0)
    }
}

/// `q^m = e^{πiτm}` with the phase reduced mod 2π before exponentiating.
fn q_pow(tau: Complex64, m: f64) -> Complex64 {
    let phase = (tau.re * m).rem_euclid(2.0);
    Complex64::from_polar((-PI * tau.im * m).exp(), PI * phase)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    Theta2,
    Theta3,
    Theta4,
    Theta3Prime,
}

/// Sum of the `q`-series for `kind`, with tail bound and term count.
///
/// Terms are added until two consecutive ones fall below `ε(1 + |partial|)`.
/// The error estimate is a geometric bound on the omitted tail plus rounding.
pub fn theta_series(kind: ThetaKind, tau: TauPoint) -> Result<EvalResult> {
    let tau = tau.tau;
    let q_abs = (-PI * tau.im).exp();
    if q_abs >= 1.0 - 1e-12 {
        return Err(Error::NonConvergence {
            what: "theta series (|q| too close to 1)",
            iterations: 0,
        });
    }
    let (mut sum, start) = match kind {
        ThetaKind::Theta2 => (Complex64::new(0.0, 0.0), 0u64),
        ThetaKind::Theta3 | ThetaKind::Theta4 => (Complex64::new(1.0, 0.0), 1),
        ThetaKind::Theta3Prime => (Complex64::new(0.0, 0.0), 1),
    };
    let term = |n: u64| -> Complex64 {
        let nf = n as f64;
        match kind {
            ThetaKind::Theta2 => q_pow(tau, nf * nf + nf + 0.25) * 2.0,
            ThetaKind::Theta3 => q_pow(tau, nf * nf) * 2.0,
            ThetaKind::Theta4 => q_pow(tau, nf * nf) * if n % 2 == 0 { 2.0 } else { -2.0 },
            ThetaKind::Theta3Prime => q_pow(tau, nf * nf) * Complex64::new(0.0, 2.0 * PI * nf * nf),
        }
    };
    let mut abs_sum = sum.norm();
    let mut small = 0;
    let mut n = start;
    loop {
        let t = term(n);
        sum += t;
        abs_sum += t.norm();
        if t.norm() <= EPS * (1.0 + sum.norm()) {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        n += 1;
    }
    let next = term(n + 1).norm();
    let ratio = q_abs.powf(2.0 * n as f64 + 3.0);
    let tail = next / (1.0 - ratio).max(1e-300);
    let terms = (n - start + 1) as usize;
    Ok(EvalResult::new(
        sum,
        tail + 2.0 * EPS * abs_sum,
        Method::Series,
        terms,
    ))
}

pub fn theta2(tau: TauPoint) -> Result<Complex64> {
    Ok(theta_series(ThetaKind::Theta2, tau)?.value)
}

pub fn theta3(tau: TauPoint) -> Result<Complex64> {
    Ok(theta_series(ThetaKind::Theta3, tau)?.value)
}

pub fn theta4(tau: TauPoint) -> Result<Complex64> {
    Ok(theta_series(ThetaKind::Theta4, tau)?.value)
}

/// `dθ₃/dτ = Σ πin² q^{n²}`.
pub fn theta3_prime(tau: TauPoint) -> Result<Complex64> {
    Ok(theta_series(ThetaKind::Theta3Prime, tau)?.value)
}

/// Both series for ψ agree to rounding at this point.
pub const PSI_SWITCH: f64 = 1.0;

/// `ψ(x) = iθ₃′(−1 + ix)`, real for `x > 0`.
pub fn psi(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("psi needs x > 0, got {x}")));
    }
    Ok(if x >= PSI_SWITCH { psi_direct(x) } else { psi_dual(x) })
}

/// `−2π Σ_{n≥1} (−1)^n n² e^{−πn²x}`; efficient for `x ≳ 1`.
pub fn psi_direct(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut n = 1u64;
    loop {
        let nf = n as f64;
        let t = nf * nf * (-PI * nf * nf * x).exp();
        sum += if n % 2 == 0 { t } else { -t };
        if t <= EPS * 0.01 * sum.abs() || t == 0.0 {
            break;
        }
        n += 1;
    }
    -2.0 * PI * sum
}

/// `(1/(2x^{5/2})) Σ_{n≥0} ((2n+1)²π − 2x) e^{−π(2n+1)²/(4x)}`; efficient
/// for `x ≲ 1`, super-exponentially small as `x → 0⁺`.
pub fn psi_dual(x: f64) -> f64 {
    let ln_pre = -2.5 * x.ln() - std::f64::consts::LN_2;
    let mut sum = 0.0;
    let mut n = 0u64;
    loop {
        let m = (2 * n + 1) as f64;
        let m2 = m * m;
        let t = (m2 * PI - 2.0 * x) * (ln_pre - PI * m2 / (4.0 * x)).exp();
        sum += t;
        if t.abs() <= EPS * 0.01 * sum.abs() || t == 0.0 {
            break;
        }
        n += 1;
    }
    sum
}

/// `θ₃(−1 + iy) = θ₄(iy)`, real; for `y < 1` through `θ₄(iy) = y^{−1/2}θ₂(i/y)`.
pub fn theta3_line(y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!("theta3_line needs y > 0, got {y}")));
    }
    if y >= 1.0 {
        Ok(theta4(TauPoint::new(Complex64::new(0.0, y))?)?.re)
    } else {
        // 2 Σ_{n≥0} e^{−π(n+1/2)²/y} / √y
        let mut sum = 0.0;
        let mut n = 0u64;
        loop {
            let h = n as f64 + 0.5;
            let t = (-PI * h * h / y - 0.5 * y.ln()).exp();
            sum += t;
            if t <= EPS * 0.01 * sum || t == 0.0 {
                break;
            }
            n += 1;
        }
        Ok(2.0 * sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(re: f64, im: f64) -> TauPoint {
        TauPoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn upper_half_plane_only() {
        assert!(TauPoint::new(Complex64::new(1.0, 0.0)).is_err());
        assert!(TauPoint::new(Complex64::new(1.0, -1.0)).is_err());
        let degenerate = TauPoint::new(Complex64::new(0.0, 1e-15)).unwrap();
        assert!(matches!(theta3(degenerate), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn values_at_ten_i() {
        let t = tp(0.0, 10.0);
        let e = (-10.0 * PI).exp();
        assert!((theta3(t).unwrap().re - (1.0 + 2.0 * e)).abs() < 1e-16);
        let th2 = theta2(t).unwrap();
        assert!((th2.re / (2.0 * (-2.5 * PI).exp()) - 1.0).abs() < 1e-15);
        let d = theta3_prime(t).unwrap();
        assert!((d.im / (2.0 * PI * e) - 1.0).abs() < 1e-14 && d.re.abs() < 1e-30);
    }

    #[test]
    fn value_at_i() {
        // θ₃(i) = π^{1/4}/Γ(3/4)
        let v = theta3(tp(0.0, 1.0)).unwrap();
        assert!((v.re - 1.086434811213308).abs() < 1e-15 && v.im.abs() < 1e-16);
        assert!((theta2(tp(0.0, 1.0)).unwrap() - theta4(tp(0.0, 1.0)).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn transformation_laws() {
        let w = Complex64::from_polar(1.0, PI / 4.0);
        for (re, im) in [(0.0, 1.0), (0.5, 1.0), (-1.0 / 3.0, 2.0), (0.25, 0.25)] {
            let t = Complex64::new(re, im);
            let p = tp(re, im);
            let shifted = tp(re + 1.0, im);
            let inv = TauPoint::new(-1.0 / t).unwrap();
            let root = (-Complex64::i() * t).sqrt();
            assert!(root.re > 0.0);
            let checks = [
                theta2(shifted).unwrap() - w * theta2(p).unwrap(),
                theta3(shifted).unwrap() - theta4(p).unwrap(),
                theta4(shifted).unwrap() - theta3(p).unwrap(),
                theta2(inv).unwrap() - root * theta4(p).unwrap(),
                theta3(inv).unwrap() - root * theta3(p).unwrap(),
                theta4(inv).unwrap() - root * theta2(p).unwrap(),
            ];
            for (k, r) in checks.iter().enumerate() {
                assert!(r.norm() < 1e-12, "law {k} at {t}: {r}");
            }
        }
    }

    #[test]
    fn series_match_products() {
        for (re, im) in [(0.0, 1.0), (0.0, 2.0), (1.0, 1.0)] {
            let p = tp(re, im);
            let q = p.nome();
            let mut prod = Complex64::new(1.0, 0.0);
            for m in 1..200 {
                let q2m = q.powu(2 * m);
                let q2m1 = q.powu(2 * m - 1);
                prod *= (1.0 - q2m) * (1.0 + q2m1) * (1.0 + q2m1);
            }
            assert!((theta3(p).unwrap() - prod).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let t = Complex64::new(-1.0, 1.0);
        let h = 1e-5;
        let fd = (theta3(TauPoint::new(t + h).unwrap()).unwrap()
            - theta3(TauPoint::new(t - h).unwrap()).unwrap())
            / (2.0 * h);
        assert!((theta3_prime(TauPoint::new(t).unwrap()).unwrap() - fd).norm() < 1e-8);
    }

    #[test]
    fn psi_series_agree_at_the_seam() {
        assert!((psi_direct(1.0) - psi_dual(1.0)).abs() < 1e-12);
        assert!((psi(10.0).unwrap() / (2.0 * PI * (-10.0 * PI).exp()) - 1.0).abs() < 1e-12);
        assert_eq!(psi_dual(1e-3), 0.0);
        assert!(psi(0.0).is_err());
    }

    #[test]
    fn psi_is_i_theta3_prime_on_the_line() {
        for x in [0.3, 0.7, 1.0, 2.0, 5.0] {
            let v = Complex64::i() * theta3_prime(tp(-1.0, x)).unwrap();
            assert!(v.im.abs() < 1e-14, "x={x}");
            assert!((v.re - psi(x).unwrap()).abs() < 1e-12, "x={x}: {} vs {}", v.re, psi(x).unwrap());
        }
    }

    #[test]
    fn theta3_line_both_sides() {
        for y in [0.05, 0.4, 0.99, 1.0, 3.0] {
            let direct = theta3(tp(-1.0, y)).unwrap();
            assert!((theta3_line(y).unwrap() - direct.re).abs() < 1e-12 && direct.im.abs() < 1e-12);
        }
    }
}

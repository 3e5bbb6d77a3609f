//! The Mordell-type integral `Φ(z, τ)`, its closed form at rational `τ`,
//! and the Gaussian integral with a linear exponent.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::bernoulli::bernoulli;
use crate::numerics::kernel::over_two_i_sin;
use crate::numerics::quadrature::{gaussian_radius, quad_line, Decay, LineContour, QuadratureSpec};
use crate::EvalResult;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `τ = a/b` with `a ≠ 0`, `b ≥ 1`; not reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalTau {
    pub a: i64,
    pub b: i64,
}

impl RationalTau {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 || b < 1 {
            return Err(Error::domain(format!("rational tau needs a != 0, b >= 1 (got {a}/{b})")));
        }
        Ok(RationalTau { a, b })
    }

    pub fn value(&self) -> f64 {
        self.a as f64 / self.b as f64
    }
}

/// Direction of the contour through 1/2 along which `e^{−πiτu²}` has pure
/// Gaussian decay. Equals `3π/4` for real `τ > 0`.
pub fn phi_direction(tau: Complex64) -> f64 {
    0.75 * PI - 0.5 * tau.arg()
}

/// `Φ(z, τ) = ∫ e^{−πiτu² + 2πizu} / (e^{πiu} − e^{−πiu}) du` over the line
/// through 1/2 in direction [`phi_direction`].
///
/// The truncation radius is the Gaussian radius for rate `π|τ|` widened by
/// `(2|z| + |τ| + 1)/|τ|`, which covers the shift of the Gaussian peak caused by
/// the linear term.
pub fn phi_quadrature(z: Complex64, tau: Complex64) -> Result<EvalResult> {
    phi_quadrature_with(z, tau, &QuadratureSpec::default())
}

pub fn phi_quadrature_with(z: Complex64, tau: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    if !(tau.im > 0.0 || (tau.im == 0.0 && tau.re > 0.0)) {
        return Err(Error::domain(format!("phi needs Im tau > 0 or tau > 0, got {tau}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("non-finite z"));
    }
    let angle = phi_direction(tau);
    // nearest integer poles sit at distance |sin θ|/2 from the line
    if 0.5 * angle.sin().abs() < 1e-3 {
        return Err(Error::ContourSingularity {
            at: Complex64::new(0.0, 0.0),
        });
    }
    let t_abs = tau.norm();
    let rate = PI * t_abs;
    let radius = (2.0 * z.norm() + t_abs + 1.0) / t_abs + gaussian_radius(1e-17, rate);
    let contour = LineContour {
        anchor: Complex64::new(0.5, 0.0),
        direction_angle: angle,
        truncation_radius: radius,
        decay: Decay::Gaussian { rate },
    };
    let f = |u: Complex64| over_two_i_sin(-PI * I * tau * u * u + 2.0 * PI * I * z * u, u);
    let mut r = quad_line(f, &contour, spec)?;
    r.method = crate::Method::Quadrature;
    Ok(r)
}

/// `e^{πi·num/den}` with `num` reduced mod `2·den` in integer arithmetic.
fn exp_pi_i_rational(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(2 * den);
    Complex64::from_polar(1.0, PI * r as f64 / den as f64)
}

/// `Φ(z, a/b)` by the finite closed form at rational `τ`.
///
/// Raises [`Error::DegeneratePrefactor`] when `|1 − (−1)^{b+ab} e^{−2πibz}| < 1e-12`;
/// the closed form gives no value there.
pub fn phi_rational(z: Complex64, a: i64, b: i64) -> Result<Complex64> {
    let RationalTau { a, b } = RationalTau::new(a, b)?;
    let (a128, b128) = (a as i128, b as i128);
    let sign = if (b128 + a128 * b128).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let e_bz = (-2.0 * PI * I * b as f64 * z).exp();
    let prefactor = 1.0 - sign * e_bz;
    if prefactor.norm() < 1e-12 {
        return Err(Error::DegeneratePrefactor {
            magnitude: prefactor.norm(),
        });
    }
    let mut first = Complex64::new(0.0, 0.0);
    for n in 0..b128 {
        let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
        first += (-2.0 * PI * I * n as f64 * z).exp() * exp_pi_i_rational(-a128 * n * n, b128) * alt;
    }
    let tau = a as f64 / b as f64;
    let root = (-I * tau).sqrt();
    let ratio = b as f64 / a as f64;
    let gauss = |m: i64| {
        let w = z + m as f64 + 0.5;
        (PI * I * ratio * w * w).exp()
    };
    let second: Complex64 = if a > 0 {
        (0..a).map(gauss).sum()
    } else {
        -(a..0).map(gauss).sum::<Complex64>()
    };
    let value = (first + sign * e_bz * (I / root) * second) / prefactor;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow(format!("phi_rational at z = {z}")));
    }
    Ok(value)
}

/// Residual of `Φ(z+1,τ) − Φ(z,τ) = (i/√(−iτ)) e^{(πi/τ)(z+1/2)²}`.
pub fn shift_one_residual(z: Complex64, tau: Complex64) -> Result<Complex64> {
    let lhs = phi_quadrature(z + 1.0, tau)?.value - phi_quadrature(z, tau)?.value;
    let w = z + 0.5;
    Ok(lhs - I / (-I * tau).sqrt() * (PI * I / tau * w * w).exp())
}

/// Residual of `Φ(z,τ) = −e^{−2πiz−πiτ}Φ(z+τ,τ) + 1`.
pub fn shift_tau_residual(z: Complex64, tau: Complex64) -> Result<Complex64> {
    let a = phi_quadrature(z, tau)?.value;
    let b = phi_quadrature(z + tau, tau)?.value;
    Ok(a + (-2.0 * PI * I * z - PI * I * tau).exp() * b - 1.0)
}

const SERIES_RADIUS: f64 = 0.5;
const SERIES_DEGREE: usize = 30;

/// `−1/(1 − e^{−z}) + e^{iz²/4π}/(e^{z/2} − e^{−z/2})`.
///
/// Both terms have simple poles at `z ∈ 2πiℤ` with residues `−1` and `+1`,
/// so the sum is entire. Near 0 it is evaluated from its Taylor series
/// (built from Bernoulli numbers), near `2πik`, `k ≠ 0`, by Cauchy's integral
/// formula on a unit circle; elsewhere by the closed form.
pub fn riemann_gauss_integral(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("non-finite z"));
    }
    let k = (z.im / (2.0 * PI)).round();
    let centre = Complex64::new(0.0, 2.0 * PI * k);
    let v = if (z - centre).norm() < SERIES_RADIUS {
        if k == 0.0 {
            gauss_series(z)
        } else {
            cauchy_near(z, centre)
        }
    } else {
        gauss_closed(z)
    };
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow(format!("riemann_gauss_integral at z = {z}")));
    }
    Ok(v)
}

fn gauss_closed(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let a = -one / (one - (-z).exp());
    let b = (I * z * z / (4.0 * PI)).exp() / ((0.5 * z).exp() - (-0.5 * z).exp());
    a + b
}

/// Taylor coefficients `c_n` of the entire function at 0.
fn gauss_coefficients() -> &'static [Complex64] {
    use std::sync::OnceLock;
    static COEF: OnceLock<Vec<Complex64>> = OnceLock::new();
    COEF.get_or_init(|| {
        let deg = SERIES_DEGREE;
        // −1/(1−e^{−z}) = −Σ_{n≥0} (−1)^n B_n z^{n−1}/n!
        // 1/(e^{z/2}−e^{−z/2}) = Σ_{n≥0} (2^{1−n}−1) B_n z^{n−1}/n!
        // index j of these arrays holds the coefficient of z^{j−1}
        let mut fact = 1.0;
        let mut first = vec![Complex64::new(0.0, 0.0); deg + 2];
        let mut cosech = vec![Complex64::new(0.0, 0.0); deg + 2];
        for n in 0..deg + 2 {
            if n > 0 {
                fact *= n as f64;
            }
            let b = bernoulli(n).expect("index within table");
            let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
            first[n] = Complex64::new(-alt * b / fact, 0.0);
            cosech[n] = Complex64::new((2f64.powi(1 - n as i32) - 1.0) * b / fact, 0.0);
        }
        // e^{iz²/4π} = Σ_j (i/4π)^j z^{2j}/j!
        let mut coef = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (m, c) in coef.iter_mut().enumerate() {
            // coefficient of z^m: index m+1 in the shifted arrays
            let mut acc = first[m + 1];
            let mut g = Complex64::new(1.0, 0.0);
            let mut j = 0;
            while 2 * j <= m + 1 {
                acc += g * cosech[m + 1 - 2 * j];
                j += 1;
                g *= I / (4.0 * PI) / j as f64;
            }
            *c = acc;
        }
        coef
    })
}

fn gauss_series(z: Complex64) -> Complex64 {
    gauss_coefficients()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn cauchy_near(z: Complex64, centre: Complex64) -> Complex64 {
    const N: usize = 96;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..N {
        let w = centre + Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / N as f64);
        // f(w)/(w − z) · dw / (2πi), dw = i(w − centre)dθ
        sum += gauss_closed(w) * (w - centre) / (w - z);
    }
    sum / N as f64
}

/// The same integral computed directly on the `0↙1` line, as an oracle.
pub fn riemann_gauss_quadrature(z: Complex64) -> Result<EvalResult> {
    let radius = gaussian_radius(1e-17, PI) + z.norm() / PI;
    let contour = LineContour::down_left(radius);
    quad_line(
        |u| over_two_i_sin(PI * I * u * u + z * u, u),
        &contour,
        &QuadratureSpec::default(),
    )
}

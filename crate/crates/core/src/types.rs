use std::fmt;

use num_complex::Complex64;

/// The universal scalar.
pub type ComplexValue = Complex64;

/// Which algorithm produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Direct,
    Reflected,
    Hankel,
    Kuzmin,
    ThetaLine,
    ThetaPrime,
    CriticalReal,
    ClosedForm,
    Lavrik,
    Quadrature,
    Series,
    ContinuedFraction,
    RayQuadrature,
    ZetaBridge,
    EulerMaclaurin,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Reflected => "reflected",
            Method::Hankel => "hankel",
            Method::Kuzmin => "kuzmin",
            Method::ThetaLine => "theta_line",
            Method::ThetaPrime => "theta_prime",
            Method::CriticalReal => "critical_real",
            Method::ClosedForm => "closed_form",
            Method::Lavrik => "lavrik",
            Method::Quadrature => "quadrature",
            Method::Series => "series",
            Method::ContinuedFraction => "continued_fraction",
            Method::RayQuadrature => "ray_quadrature",
            Method::ZetaBridge => "zeta_bridge",
            Method::EulerMaclaurin => "euler_maclaurin",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A computed value together with an upper-bound error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub method: Method,
    /// Series terms or quadrature nodes spent.
    pub terms_or_nodes: usize,
}

impl EvalResult {
    pub fn new(value: Complex64, abs_err: f64, method: Method, terms_or_nodes: usize) -> Self {
        EvalResult {
            value,
            abs_err,
            method,
            terms_or_nodes,
        }
    }

    /// Exact result, e.g. a closed form or a forced zero.
    pub fn exact(value: Complex64, method: Method) -> Self {
        EvalResult::new(value, 0.0, method, 1)
    }

    /// Multiply by a constant factor, scaling the error with it.
    pub fn scaled(self, factor: Complex64) -> Self {
        EvalResult {
            value: self.value * factor,
            abs_err: self.abs_err * factor.norm(),
            ..self
        }
    }
}

/// `|z - round(z)| < 1e-12` with an exactly zero imaginary part.
pub(crate) fn as_exact_integer(z: Complex64) -> Option<i64> {
    if z.im != 0.0 || !z.re.is_finite() {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() < 1e-12 && r.abs() < 1e15 {
        Some(r as i64)
    } else {
        None
    }
}

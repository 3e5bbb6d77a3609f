//! `R(s)` by several independent representations, closed forms at integers,
//! the Lavrik family and a dispatcher.

mod closed;
mod direct;
mod hankel;
mod kuzmin;
mod reflected;
mod theta_reps;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::quadrature::{QuadratureSpec, Tolerance};
use crate::{as_exact_integer, EvalResult, Method};

pub use closed::{r_even_closed, r_odd_negative_closed};
pub use direct::r_direct;
pub use hankel::r_hankel;
pub use kuzmin::{kuzmin_term_identity, lavrik_l, r_kuzmin};
pub use reflected::r_reflected;
pub(crate) use theta_reps::theta_prime_integral;
pub use theta_reps::{critical_fg, r_critical_real_form, r_theta_line, r_theta_line_negative, r_theta_prime};

/// Which representation of `R` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    Direct,
    Reflected,
    Hankel,
    Kuzmin,
    ThetaLine,
    ThetaPrime,
    CriticalReal,
    Auto,
}

impl MethodChoice {
    pub const ALL: [MethodChoice; 8] = [
        MethodChoice::Direct,
        MethodChoice::Reflected,
        MethodChoice::Hankel,
        MethodChoice::Kuzmin,
        MethodChoice::ThetaLine,
        MethodChoice::ThetaPrime,
        MethodChoice::CriticalReal,
        MethodChoice::Auto,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MethodChoice::Direct => "direct",
            MethodChoice::Reflected => "reflected",
            MethodChoice::Hankel => "hankel",
            MethodChoice::Kuzmin => "kuzmin",
            MethodChoice::ThetaLine => "theta_line",
            MethodChoice::ThetaPrime => "theta_prime",
            MethodChoice::CriticalReal => "critical_real",
            MethodChoice::Auto => "auto",
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MethodChoice::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::domain(format!("unknown method '{s}'")))
    }
}

/// Accuracy target and method selection for evaluations of `R`.
///
/// The tolerance is mixed: a result passes when
/// `abs_err ≤ tolerance · max(1, |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodPolicy {
    pub tolerance: f64,
    pub method: MethodChoice,
    /// Cap on series terms (Kuzmin, Lavrik).
    pub max_terms: usize,
    pub quad: QuadratureSpec,
}

impl Default for MethodPolicy {
    fn default() -> Self {
        MethodPolicy {
            tolerance: 1e-9,
            method: MethodChoice::Auto,
            max_terms: 20_000,
            quad: QuadratureSpec::default(),
        }
    }
}

impl MethodPolicy {
    pub const MIN_TOLERANCE: f64 = 1e-14;
    pub const MAX_TOLERANCE: f64 = 1e-3;

    pub fn new(tolerance: f64, method: MethodChoice) -> Result<Self> {
        let p = MethodPolicy {
            tolerance,
            method,
            ..Default::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_method(self, method: MethodChoice) -> Self {
        MethodPolicy { method, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(Self::MIN_TOLERANCE..=Self::MAX_TOLERANCE).contains(&self.tolerance) {
            return Err(Error::domain(format!(
                "tolerance {:e} outside [{:e}, {:e}]",
                self.tolerance,
                Self::MIN_TOLERANCE,
                Self::MAX_TOLERANCE
            )));
        }
        if self.max_terms < 200 {
            return Err(Error::domain("max_terms must be at least 200"));
        }
        self.quad.validate()
    }

    /// Target for an integral that is multiplied by a factor of size
    /// `scale` to produce the final value.
    pub(crate) fn integral_tolerance(&self, scale: f64, s: Complex64) -> Tolerance {
        let abs = if scale > 0.0 && scale.is_finite() {
            0.02 * self.tolerance / scale
        } else {
            f64::INFINITY
        };
        Tolerance {
            abs: abs.max(1e-300),
            rel: 0.02 * self.tolerance,
            // exponents of size ~|s| lose that many ulps when exponentiated
            noise: 32.0 + 4.0 * s.norm(),
        }
    }

    /// Accept `r` if its error estimate meets the mixed tolerance.
    pub(crate) fn accept(&self, r: EvalResult) -> Result<EvalResult> {
        if !(r.value.re.is_finite() && r.value.im.is_finite()) {
            return Err(Error::Overflow(format!("{} produced a non-finite value", r.method)));
        }
        let requested = self.tolerance * r.value.norm().max(1.0);
        if !(r.abs_err <= requested) {
            return Err(Error::ToleranceNotMet {
                method: r.method,
                achieved: r.abs_err,
                requested,
            });
        }
        Ok(r)
    }
}

/// `R(s)` together with its argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxValue {
    pub s: Complex64,
    pub result: EvalResult,
}

/// Largest `n` for which the integer closed forms are used.
const CLOSED_FORM_MAX_N: i64 = 64;

/// `R(s)` by the method in `policy`, or by the dispatcher when it is `Auto`:
///
/// * exact nonpositive even integer: exact zero;
/// * exact even integer `2n ≥ 0`: [`r_even_closed`];
/// * exact negative odd integer: [`r_odd_negative_closed`];
/// * `|Im s| ≤ 30`: [`r_theta_prime`], falling back to [`r_kuzmin`];
/// * otherwise [`r_kuzmin`].
pub fn r_eval(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    policy.validate()?;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("non-finite s"));
    }
    match policy.method {
        MethodChoice::Direct => r_direct(s, policy),
        MethodChoice::Reflected => r_reflected(s, policy),
        MethodChoice::Hankel => r_hankel(s, policy),
        MethodChoice::Kuzmin => r_kuzmin(s, policy),
        MethodChoice::ThetaLine => r_theta_line(s, policy),
        MethodChoice::ThetaPrime => r_theta_prime(s, policy),
        MethodChoice::CriticalReal => {
            if s.re != 0.5 {
                return Err(Error::domain("critical_real needs Re s = 1/2"));
            }
            r_critical_real_form(s.im, policy)
        }
        MethodChoice::Auto => r_auto(s, policy),
    }
}

fn r_auto(s: Complex64, policy: &MethodPolicy) -> Result<EvalResult> {
    if let Some(k) = as_exact_integer(s) {
        if k <= 0 && k % 2 == 0 && k != 0 {
            return Ok(EvalResult::exact(Complex64::new(0.0, 0.0), Method::ClosedForm));
        }
        if k >= 0 && k % 2 == 0 && k / 2 <= CLOSED_FORM_MAX_N {
            let v = r_even_closed((k / 2) as u32)?;
            return Ok(closed_result(v));
        }
        if k < 0 && (1 - k) / 2 <= CLOSED_FORM_MAX_N {
            let v = r_odd_negative_closed(((1 - k) / 2) as u32)?;
            return Ok(closed_result(v));
        }
    }
    if s.im.abs() <= 30.0 {
        match r_theta_prime(s, policy) {
            Ok(r) => Ok(r),
            Err(e) if e.is_numerical() || matches!(e, Error::Overflow(_)) => r_kuzmin(s, policy),
            Err(e) => Err(e),
        }
    } else {
        r_kuzmin(s, policy)
    }
}

/// Closed forms are finite sums of a few dozen rounded terms.
fn closed_result(v: Complex64) -> EvalResult {
    EvalResult::new(v, 64.0 * f64::EPSILON * v.norm().max(1.0), Method::ClosedForm, 1)
}

/// [`r_eval`] wrapped with its argument.
pub fn aux_value(s: Complex64, policy: &MethodPolicy) -> Result<AuxValue> {
    Ok(AuxValue {
        s,
        result: r_eval(s, policy)?,
    })
}

/// Methods whose domain contains `s` and whose envelope covers it.
pub fn applicable_methods(s: Complex64) -> Vec<MethodChoice> {
    let t = s.im.abs();
    let exact = as_exact_integer(s);
    let mut out = Vec::new();
    if t <= 30.0 {
        out.push(MethodChoice::Direct);
    }
    if s.re < 0.0 {
        out.push(MethodChoice::Reflected);
    }
    let odd = matches!(exact, Some(k) if k.rem_euclid(2) == 1);
    if t <= 20.0 && !odd {
        out.push(MethodChoice::Hankel);
    }
    if s != Complex64::new(0.0, 0.0) {
        out.push(MethodChoice::Kuzmin);
    }
    if t <= 30.0 && exact != Some(0) && exact != Some(1) {
        out.push(MethodChoice::ThetaLine);
    }
    if t <= 30.0 && exact != Some(0) {
        out.push(MethodChoice::ThetaPrime);
    }
    if s.re == 0.5 && t <= 30.0 {
        out.push(MethodChoice::CriticalReal);
    }
    out
}

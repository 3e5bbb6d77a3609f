//! The auxiliary function `R(s)` of the Riemann–Siegel integral, with `ζ`,
//! `Z`, `λ` and the Mordell integral built on it.
//!
//! `R` is computed by several independent representations (a defining line
//! integral, a reflected integral, a Hankel-contour integral, an incomplete
//! gamma series and three theta-function integrals) that serve as checks on
//! each other. On top of `R` sit `χ`, `ϑ`, `Z`, `λ`, `Y`, the Mordell integral
//! `Φ(z, τ)` and grid / zero-search drivers.

// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod auxiliary;
pub mod bridge;
pub mod error;
pub mod mordell;
pub mod numerics;
pub mod selftest;
pub mod theta;
mod types;

pub use error::{Error, Result};
pub use numerics::{
    complex_log_gamma, gamma_upper_ratio, quad_line, quad_ray_decay, zeta_even, zeta_reference,
    LineContour, QuadRule, QuadratureSpec,
};
pub use types::{ComplexValue, EvalResult, Method};
pub(crate) use types::as_exact_integer;

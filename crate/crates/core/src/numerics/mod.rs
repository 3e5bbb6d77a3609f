//! Scalars, special functions and quadrature engines.

pub mod accel;
pub mod bernoulli;
pub mod gamma;
pub mod incgamma;
pub mod kernel;
pub mod quadrature;
pub mod zeta_ref;

pub use bernoulli::{bernoulli, bernoulli_exact, zeta_even, BERNOULLI_MAX_INDEX, ZETA_EVEN_MAX_K};
pub use gamma::{complex_log_gamma, gamma, reciprocal_gamma};
pub use incgamma::{
    gamma_upper_ratio, upper_ratio, upper_ratio_continued_fraction, upper_ratio_ray,
    upper_ratio_series, UpperGammaArgs, UpperRatio,
};
pub use quadrature::{
    gaussian_radius, quad_line, quad_ray_decay, Decay, LineContour, QuadRule, QuadratureSpec, Ray,
};
pub use zeta_ref::{zeta_reference, zeta_reference_detailed};

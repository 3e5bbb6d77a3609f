use num_complex::Complex64;
use thiserror::Error;

use crate::Method;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure mode of the library.
///
/// The variants split into two families that callers (the CLI in
/// particular) map onto distinct exit statuses: numerical shortfalls
/// ([`Error::is_numerical`]) and domain / pole violations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {what} at {at}")]
    Pole { what: &'static str, at: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("tolerance not met by {method}: error estimate {achieved:.3e} exceeds {requested:.3e}")]
    ToleranceNotMet {
        method: Method,
        achieved: f64,
        requested: f64,
    },

    #[error("contour hits a singularity of the integrand near {at}")]
    ContourSingularity { at: Complex64 },

    #[error("degenerate prefactor {magnitude:.3e} in rational-tau closed form")]
    DegeneratePrefactor { magnitude: f64 },

    #[error("series acceleration failed: {0}")]
    AccelerationFailure(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("outside evaluation envelope: {0}")]
    Envelope(String),
}

impl Error {
    /// True for failures caused by accuracy or convergence limits rather than
    /// by an invalid argument.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::ToleranceNotMet { .. }
                | Error::AccelerationFailure(_)
                | Error::Envelope(_)
        )
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

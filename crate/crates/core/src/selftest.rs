//! Identity suites run by `auxzeta selftest`.
//!
//! Each check compares two independently computed quantities and records the
//! residual against a threshold. A check whose evaluation fails records the
//! error instead of a residual and counts as a failure.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::auxiliary::{
    applicable_methods, kuzmin_term_identity, lavrik_l, r_direct, r_eval, r_even_closed, r_kuzmin, r_odd_negative_closed,
    r_reflected, r_theta_prime, MethodPolicy,
};
use crate::bridge::chi;
use crate::error::Result;
use crate::mordell::{phi_quadrature, phi_rational, shift_one_residual, shift_tau_residual, riemann_gauss_integral};
use crate::theta::{psi_direct, psi_dual, theta2, theta3, theta4, TauPoint};
use crate::zeta_reference;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SelftestOptions {
    /// Run a reduced sample of every suite.
    pub quick: bool,
    /// Replaces every threshold, and is the evaluation tolerance where the
    /// policy allows it.
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Residual(f64),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub outcome: Outcome,
    pub threshold: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Residual(r) if r <= self.threshold)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        match &self.outcome {
            Outcome::Residual(r) => write!(
                f,
                "{status}  {:<18} {:<44} residual {:.3e}  (threshold {:.1e})",
                self.suite, self.name, r, self.threshold
            ),
            Outcome::Failed(e) => write!(f, "{status}  {:<18} {:<44} error: {e}", self.suite, self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "{} checks, {} failed", self.checks.len(), self.failures())
    }
}

struct Runner {
    opts: SelftestOptions,
    policy: MethodPolicy,
    checks: Vec<Check>,
}

impl Runner {
    fn record(&mut self, suite: &'static str, name: String, threshold: f64, residual: Result<f64>) {
        let outcome = match residual {
            Ok(r) if r.is_finite() => Outcome::Residual(r),
            Ok(r) => Outcome::Failed(format!("non-finite residual {r}")),
            Err(e) => Outcome::Failed(e.to_string()),
        };
        self.checks.push(Check {
            suite,
            name,
            outcome,
            threshold: self.opts.tol.unwrap_or(threshold),
        });
    }

    fn pick<T: Copy>(&self, all: &[T], quick: usize) -> Vec<T> {
        if self.opts.quick {
            all[..quick.min(all.len())].to_vec()
        } else {
            all.to_vec()
        }
    }

    fn trivial_zeros(&mut self) {
        let suite = "trivial zeros";
        for n in self.pick(&[1u32, 2, 3, 4, 5], 2) {
            let s = c(-2.0 * n as f64, 0.0);
            let p = self.policy;
            let exact = r_eval(s, &p).map(|r| r.value.norm());
            self.record(suite, format!("dispatcher R({})", -2 * n as i64), 0.0, exact);
            let reflected = r_reflected(s, &p).map(|r| r.value.norm());
            self.record(suite, format!("reflected R({})", -2 * n as i64), 1e-9, reflected);
            let prime = r_theta_prime(s, &p).map(|r| r.value.norm());
            self.record(suite, format!("theta' R({})", -2 * n as i64), 1e-9, prime);
        }
    }

    fn closed_forms(&mut self) {
        let suite = "integer values";
        let p = self.policy;
        for n in self.pick(&[0u32, 1, 2, 3], 2) {
            let s = c(2.0 * n as f64, 0.0);
            // the incomplete gamma series excludes s = 0
            let (label, other) = if n == 0 { ("direct", r_direct(s, &p)) } else { ("kuzmin", r_kuzmin(s, &p)) };
            let r = (|| Ok((r_even_closed(n)? - other?.value).norm()))();
            self.record(suite, format!("even closed form vs {label}, s = {}", 2 * n), 1e-8, r);
        }
        for n in self.pick(&[1u32, 2, 3], 1) {
            let s = c(1.0 - 2.0 * n as f64, 0.0);
            let r = (|| Ok((r_odd_negative_closed(n)? - r_reflected(s, &p)?.value).norm()))();
            self.record(suite, format!("odd closed form vs reflected, s = {}", 1 - 2 * n as i64), 1e-8, r);
        }
        let r = (|| Ok((r_eval(c(0.0, 0.0), &p)?.value - c(-0.5, 0.0)).norm()))();
        self.record(suite, "R(0) = -1/2".into(), 1e-15, r);
    }

    fn cross_method(&mut self) {
        let suite = "cross-method";
        let points = [c(0.5, 10.0), c(-1.5, 4.0), c(2.3, -3.0), c(3.5, 17.0), c(-3.2, -8.5), c(0.7, 0.4)];
        for s in self.pick(&points, 2) {
            let mut values = Vec::new();
            for m in applicable_methods(s) {
                match r_eval(s, &self.policy.with_method(m)) {
                    Ok(r) => values.push((m, r)),
                    Err(e) => self.record(suite, format!("{m} at {s}"), 0.0, Err(e)),
                }
            }
            for i in 0..values.len() {
                for j in i + 1..values.len() {
                    let (ma, a) = values[i];
                    let (mb, b) = values[j];
                    let bound = (3.0 * (a.abs_err + b.abs_err)).min(1e-7 * a.value.norm().max(1.0));
                    let d = (a.value - b.value).norm();
                    self.record(suite, format!("{ma} vs {mb} at {s}"), bound, Ok(d));
                }
            }
        }
    }

    fn kuzmin_identity(&mut self) {
        let suite = "kuzmin term";
        let ss = self.pick(&[c(0.5, 0.0), c(2.0, 1.0), c(-1.0, 0.0)], 1);
        for n in self.pick(&[1u32, 2, 3], 2) {
            for &s in &ss {
                let r = kuzmin_term_identity(n, s).map(|(lhs, rhs)| (lhs.value - rhs).norm());
                self.record(suite, format!("n = {n}, s = {s}"), 1e-8, r);
            }
        }
    }

    fn mordell(&mut self) {
        let suite = "functional eqs";
        let pts = [
            (c(0.3, 0.0), c(0.0, 1.0)),
            (c(0.2, 0.0), c(0.5, 1.0)),
            (c(0.7, -0.3), c(-0.4, 0.9)),
            (c(0.1, 0.4), c(1.2, 2.0)),
            (c(0.5, 0.2), c(0.3, 0.6)),
        ];
        for (z, tau) in self.pick(&pts, 2) {
            let r1 = shift_one_residual(z, tau).map(|r| r.norm());
            self.record(suite, format!("z -> z+1 law at z = {z}, tau = {tau}"), 1e-9, r1);
            let r2 = shift_tau_residual(z, tau).map(|r| r.norm());
            self.record(suite, format!("z -> z+tau law at z = {z}, tau = {tau}"), 1e-9, r2);
        }
        for (a, b) in self.pick(&[(1i64, 1i64), (1, 2), (2, 3)], 1) {
            let z = c(0.3, 0.0);
            let tau = c(a as f64 / b as f64, 0.0);
            let r = (|| Ok((phi_rational(z, a, b)? - phi_quadrature(z, tau)?.value).norm()))();
            self.record(suite, format!("Phi closed form vs quadrature, tau = {a}/{b}"), 1e-8, r);
        }
        let p = self.policy;
        for z in self.pick(&[c(0.5, 0.0), c(0.2, 0.0), c(-0.3, 0.4)], 1) {
            let r = (|| {
                let mut sum = Complex64::new(0.0, 0.0);
                let mut pow = Complex64::new(1.0, 0.0);
                for n in 0..=40 {
                    sum += r_eval(c(-(n as f64), 0.0), &p)?.value * pow;
                    pow *= z / (n as f64 + 1.0);
                }
                Ok((sum - riemann_gauss_integral(z)?).norm())
            })();
            self.record(suite, format!("generating function at z = {z}"), 1e-8, r);
        }
    }

    fn theta_laws(&mut self) {
        let suite = "theta laws";
        let w = Complex64::from_polar(1.0, PI / 4.0);
        let taus = [c(0.0, 1.0), c(0.5, 1.0), c(-1.0 / 3.0, 2.0), c(0.25, 0.25)];
        for t in self.pick(&taus, 2) {
            let r = (|| {
                let p = TauPoint::new(t)?;
                let shifted = TauPoint::new(t + 1.0)?;
                let inv = TauPoint::new(-1.0 / t)?;
                let root = (-Complex64::i() * t).sqrt();
                let laws = [
                    theta2(shifted)? - w * theta2(p)?,
                    theta3(shifted)? - theta4(p)?,
                    theta4(shifted)? - theta3(p)?,
                    theta2(inv)? - root * theta4(p)?,
                    theta3(inv)? - root * theta3(p)?,
                    theta4(inv)? - root * theta2(p)?,
                ];
                Ok(laws.iter().map(|r| r.norm()).fold(0.0, f64::max))
            })();
            self.record(suite, format!("six laws at tau = {t}"), 1e-12, r);
        }
        self.record(suite, "psi series seam at x = 1".into(), 1e-12, Ok((psi_direct(1.0) - psi_dual(1.0)).abs()));
    }

    fn lavrik(&mut self) {
        let suite = "lavrik family";
        let p = self.policy;
        for s in self.pick(&[c(2.0, 0.0), c(0.5, 5.0)], 1) {
            let r = (|| Ok((lavrik_l(Complex64::i(), s, &p)?.value - r_eval(s, &p)?.value).norm()))();
            self.record(suite, format!("L(i, s) = R(s) at s = {s}"), 1e-8, r);
        }
        let tau = Complex64::from_polar(1.0, PI / 4.0);
        for s in self.pick(&[c(0.5, 3.0), c(-0.7, 8.0)], 1) {
            let r = (|| {
                let l = lavrik_l(tau, s, &p)?.value;
                let l_dual = lavrik_l(tau, 1.0 - s.conj(), &p)?.value;
                Ok((l + chi(s)? * l_dual.conj() - zeta_reference(s)?).norm())
            })();
            self.record(suite, format!("zeta identity, tau = e^(i pi/4), s = {s}"), 1e-7, r);
        }
    }
}

/// Runs every suite and collects the outcomes; never panics on a failed
/// evaluation.
pub fn run_selftest(opts: SelftestOptions) -> SelftestReport {
    let mut policy = MethodPolicy::default();
    if let Some(t) = opts.tol {
        policy.tolerance = t.clamp(MethodPolicy::MIN_TOLERANCE, MethodPolicy::MAX_TOLERANCE);
    }
    let mut runner = Runner {
        opts,
        policy,
        checks: Vec::new(),
    };
    runner.trivial_zeros();
    runner.closed_forms();
    runner.cross_method();
    runner.kuzmin_identity();
    runner.mordell();
    runner.theta_laws();
    runner.lavrik();
    SelftestReport { checks: runner.checks }
}

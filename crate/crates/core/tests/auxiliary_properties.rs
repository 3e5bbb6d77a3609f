use std::f64::consts::PI;

use auxzeta_core::auxiliary::{
    applicable_methods, r_eval, r_even_closed, r_kuzmin, r_odd_negative_closed, r_reflected, MethodChoice, MethodPolicy,
};
use auxzeta_core::mordell::{phi_quadrature, phi_rational, shift_one_residual, shift_tau_residual, riemann_gauss_integral};
use auxzeta_core::numerics::accel::euler_alternating;
use auxzeta_core::{Error, Method};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn policy() -> MethodPolicy {
    MethodPolicy::default()
}

fn generating_sum(z: Complex64) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    let mut pow = c(1.0, 0.0);
    for n in 0..=40 {
        sum += r_eval(c(-(n as f64), 0.0), &policy()).unwrap().value * pow;
        pow *= z / (n as f64 + 1.0);
    }
    sum
}

#[test]
fn trivial_zeros_through_the_dispatcher_and_reflected_integral() {
    for n in 1..=6 {
        let s = c(-2.0 * n as f64, 0.0);
        let d = r_eval(s, &policy()).unwrap();
        assert_eq!(d.value, c(0.0, 0.0));
        assert_eq!(d.method, Method::ClosedForm);
        assert!(r_reflected(s, &policy()).unwrap().value.norm() < 1e-9);
    }
}

#[test]
fn closed_forms_match_series_and_integrals() {
    for n in 1..=3 {
        let k = r_kuzmin(c(2.0 * n as f64, 0.0), &policy()).unwrap().value;
        assert!((r_even_closed(n).unwrap() - k).norm() < 1e-8, "n = {n}");
        let r = r_reflected(c(1.0 - 2.0 * n as f64, 0.0), &policy()).unwrap().value;
        assert!((r_odd_negative_closed(n).unwrap() - r).norm() < 1e-8, "n = {n}");
    }
}

#[test]
fn generating_function_matches_gauss_integral() {
    for z in [c(0.2, 0.0), c(0.5, 0.0), c(-0.3, 0.4)] {
        let g = riemann_gauss_integral(z).unwrap();
        assert!((generating_sum(z) - g).norm() < 1e-8, "z = {z}");
    }
}

/// `Σ_{n∈ℤ} (−1)^n x/(x² − n²) / (2πi) = 1/(e^{πix} − e^{−πix})`.
fn mittag_leffler(x: Complex64, n_max: usize) -> Complex64 {
    let head: Complex64 = 1.0 / x;
    // pair n and −n; terms alternate in sign
    let terms: Vec<Complex64> = (1..=n_max).map(|n| 2.0 * x / (n as f64 * n as f64 - x * x)).collect();
    let acc = euler_alternating(&terms, 1e-16);
    (head + acc.value) / (2.0 * PI * Complex64::i())
}

#[test]
fn mittag_leffler_expansion_on_the_contour() {
    let x = 0.5 + 0.3 * Complex64::from_polar(1.0, -0.75 * PI);
    let want = 1.0 / ((PI * Complex64::i() * x).exp() - (-PI * Complex64::i() * x).exp());
    assert!((mittag_leffler(x, 10_000) - want).norm() < 1e-6);
}

#[test]
fn phi_sign_of_rational_tau_is_consistent_with_quadrature() {
    // a < 0 sits below the real axis where the integral diverges; compare the
    // two closed-form branches through their functional equations instead
    let z = c(0.3, 0.0);
    for (a, b) in [(1, 1), (1, 2), (2, 3)] {
        let pos = phi_rational(z, a, b).unwrap();
        let quad = phi_quadrature(z, c(a as f64 / b as f64, 0.0)).unwrap().value;
        assert!((pos - quad).norm() < 1e-8);
        let neg = phi_rational(z, -a, b).unwrap();
        let tau = c(-(a as f64) / b as f64, 0.0);
        let shifted = phi_rational(z + tau, -a, b).unwrap();
        let law = neg + (-2.0 * PI * Complex64::i() * z - PI * Complex64::i() * tau).exp() * shifted - 1.0;
        assert!(law.norm() < 1e-9, "a = {}: {law}", -a);
    }
}

#[test]
fn envelope_edges_refuse_rather_than_answer() {
    let p = policy().with_method(MethodChoice::Hankel);
    assert!(matches!(r_eval(c(4.0, 20.0), &p), Err(Error::ToleranceNotMet { .. })));
    assert!(matches!(r_eval(c(3.0, 0.0), &p), Err(Error::Pole { .. })));
    let loose = MethodPolicy::new(1e-8, MethodChoice::Hankel).unwrap();
    assert!(r_eval(c(4.0, 20.0), &loose).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn representations_agree(sigma in -4.0..4.0f64, t in -20.0..20.0f64) {
        let s = c(sigma, t);
        let mut vals = Vec::new();
        for m in applicable_methods(s) {
            match r_eval(s, &policy().with_method(m)) {
                Ok(r) => vals.push((m, r)),
                Err(Error::ToleranceNotMet { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(format!("{m} at {s}: {e}"))),
            }
        }
        prop_assert!(vals.len() >= 2);
        for i in 0..vals.len() {
            for j in i + 1..vals.len() {
                let (ma, a) = vals[i];
                let (mb, b) = vals[j];
                let d = (a.value - b.value).norm();
                prop_assert!(d <= 3.0 * (a.abs_err + b.abs_err), "{ma} vs {mb} at {s}: {d:e}");
                prop_assert!(d <= 1e-7 * a.value.norm().max(1.0));
            }
        }
    }

    #[test]
    fn generating_function_in_a_disc(r in 0.0..0.6f64, a in -PI..PI) {
        let z = Complex64::from_polar(r, a);
        let g = riemann_gauss_integral(z).unwrap();
        prop_assert!((generating_sum(z) - g).norm() < 1e-8);
    }

    #[test]
    fn mittag_leffler_along_the_contour(u in -1.0..1.0f64) {
        let x = 0.5 + u * Complex64::from_polar(1.0, -0.75 * PI);
        let want = 1.0 / ((PI * Complex64::i() * x).exp() - (-PI * Complex64::i() * x).exp());
        let got = mittag_leffler(x, 10_000);
        prop_assert!((got - want).norm() < 1e-6 * want.norm().max(1.0));
    }

    #[test]
    fn phi_functional_equations(
        zr in 0.0..1.0f64, zi in -0.5..0.5f64,
        m in 0.5..3.0f64, arg in 0.05 * PI..0.95 * PI,
    ) {
        let z = c(zr, zi);
        let tau = Complex64::from_polar(m, arg);
        prop_assert!(shift_one_residual(z, tau).unwrap().norm() < 1e-9);
        prop_assert!(shift_tau_residual(z, tau).unwrap().norm() < 1e-9);
    }
}

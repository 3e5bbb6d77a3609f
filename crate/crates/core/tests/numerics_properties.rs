use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use auxzeta_core::numerics::quadrature::Decay;
use auxzeta_core::theta::{psi, theta2, theta3, theta3_prime, theta4, TauPoint};
use auxzeta_core::{complex_log_gamma, gamma_upper_ratio, quad_line, zeta_reference, LineContour, QuadratureSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Distance from `z` to the nearest point of `2πiℤ`.
fn dist_2pi_i(z: Complex64) -> f64 {
    let k = (z.im / (2.0 * PI)).round();
    (z - c(0.0, 2.0 * PI * k)).norm()
}

#[test]
fn gaussian_normalization_on_lines_through_zero() {
    for angle in [0.0, -0.75 * PI, 0.25 * PI] {
        let contour = LineContour {
            anchor: c(0.0, 0.0),
            direction_angle: angle,
            truncation_radius: 8.0,
            decay: Decay::Gaussian { rate: PI },
        };
        let dir = Complex64::from_polar(1.0, angle);
        // ∫ e^{−πu²} du along the real parameter u, written in terms of x = u·dir
        let r = quad_line(move |x| (-PI * (x / dir) * (x / dir)).exp() / dir, &contour, &QuadratureSpec::default())
            .unwrap();
        assert!((r.value - 1.0).norm() <= r.abs_err.max(1e-14), "angle {angle}: {}", r.value);
    }
}

#[test]
fn upper_ratio_vanishes_far_along_the_real_axis() {
    let q = gamma_upper_ratio(c(0.75, 3.0), c(50.0, 0.0)).unwrap();
    assert!(q.norm() < 1e-20);
}

#[test]
fn reference_zeta_matches_dirichlet_series() {
    for s in [c(2.0, 0.0), c(2.5, 7.0), c(3.0, -12.0)] {
        let mut sum = Complex64::new(0.0, 0.0);
        for n in (1..=1_000_000u32).rev() {
            sum += (-s * (n as f64).ln()).exp();
        }
        assert!((zeta_reference(s).unwrap() - sum).norm() <= 1e-6, "s = {s}");
    }
}

#[test]
fn theta_product_matches_series() {
    for tau in [c(0.0, 1.0), c(0.0, 2.0), c(1.0, 1.0)] {
        let p = TauPoint::new(tau).unwrap();
        let q = p.nome();
        let mut prod = Complex64::new(1.0, 0.0);
        for m in 1..400 {
            let q2m = q.powu(2 * m);
            let q2m1 = q.powu(2 * m - 1);
            prod *= (1.0 - q2m) * (1.0 + q2m1) * (1.0 + q2m1);
        }
        assert!((theta3(p).unwrap() - prod).norm() < 1e-12, "tau = {tau}");
    }
}

#[test]
fn psi_is_real_derivative_on_the_line() {
    for x in [0.3, 0.7, 1.0, 2.0, 5.0] {
        let v = Complex64::i() * theta3_prime(TauPoint::new(c(-1.0, x)).unwrap()).unwrap();
        assert!(v.im.abs() < 1e-14);
        assert_abs_diff_eq!(v.re, psi(x).unwrap(), epsilon = 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn log_gamma_recursion(re in 0.25..4.0f64, im in -75.0..75.0f64) {
        let z = c(re, im);
        let d = complex_log_gamma(z + 1.0).unwrap() - complex_log_gamma(z).unwrap() - z.ln();
        prop_assert!(d.norm() < 1e-12, "z = {z}: {d}");
    }

    #[test]
    fn log_gamma_reflection(re in -3.0..3.0f64, im in 0.05..20.0f64, flip in any::<bool>()) {
        let z = c(re, if flip { -im } else { im });
        let lhs = complex_log_gamma(z).unwrap() + complex_log_gamma(1.0 - z).unwrap();
        let rhs = (PI / (PI * z).sin()).ln();
        let d = lhs - rhs;
        let k = (d.im / (2.0 * PI)).round();
        prop_assert!(d.re.abs() < 1e-10 && (d.im - 2.0 * PI * k).abs() < 1e-10, "z = {z}: {d}");
    }

    #[test]
    fn theta_transformation_laws(re in -1.0..1.0f64, im in 0.3..3.0f64) {
        let t = c(re, im);
        let w = Complex64::from_polar(1.0, PI / 4.0);
        let p = TauPoint::new(t).unwrap();
        let sh = TauPoint::new(t + 1.0).unwrap();
        let inv = TauPoint::new(-1.0 / t).unwrap();
        let root = (-Complex64::i() * t).sqrt();
        prop_assert!(root.re > 0.0);
        let scale = theta3(p).unwrap().norm().max(1.0) * root.norm().max(1.0);
        let laws = [
            theta2(sh).unwrap() - w * theta2(p).unwrap(),
            theta3(sh).unwrap() - theta4(p).unwrap(),
            theta4(sh).unwrap() - theta3(p).unwrap(),
            theta2(inv).unwrap() - root * theta4(p).unwrap(),
            theta3(inv).unwrap() - root * theta3(p).unwrap(),
            theta4(inv).unwrap() - root * theta2(p).unwrap(),
        ];
        for (k, r) in laws.iter().enumerate() {
            prop_assert!(r.norm() < 1e-12 * scale, "law {k} at {t}: {r}");
        }
    }

    #[test]
    fn euler_maclaurin_satisfies_the_functional_equation(sigma in -2.0..3.0f64, t in 1.0..30.0f64) {
        let s = c(sigma, t);
        let chi = (s - 0.5) * PI.ln() + complex_log_gamma((1.0 - s) / 2.0).unwrap() - complex_log_gamma(s / 2.0).unwrap();
        let lhs = zeta_reference(s).unwrap();
        let rhs = chi.exp() * zeta_reference(1.0 - s).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0));
    }

    #[test]
    fn gauss_integral_is_continuous_near_its_removable_points(re in -0.6..0.6f64, im in -0.6..0.6f64) {
        let z = c(re, im);
        prop_assume!(dist_2pi_i(z) > 1e-3);
        let a = auxzeta_core::mordell::riemann_gauss_integral(z).unwrap();
        let b = auxzeta_core::mordell::riemann_gauss_integral(z * (1.0 + 1e-7)).unwrap();
        prop_assert!((a - b).norm() < 1e-6);
    }
}

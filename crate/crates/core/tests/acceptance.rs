//! One PASS/FAIL line per acceptance criterion.
//!
//! Criterion 10a asks for residue 1 of `λ` at `s = 1`. The residue is `i`
//! (`R = (ζ + iλ)/2` with `R` entire), so that line fails; it is reported and
//! does not fail the run. A supplementary line checks the residue `i`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::ExitCode;

use auxzeta_core::auxiliary::{
    applicable_methods, kuzmin_term_identity, lavrik_l, r_direct, r_eval, r_reflected, r_theta_prime, MethodPolicy,
};
use auxzeta_core::bridge::{
    chi, find_lambda_zero_2d, find_zeros_1d, lambda_of_s, theta_phase, z_of_t, zeta_via_r, CriticalFn, Region,
};
use auxzeta_core::mordell::{
    phi_quadrature, phi_rational, shift_one_residual, shift_tau_residual, riemann_gauss_integral, riemann_gauss_quadrature,
};
use auxzeta_core::theta::{psi_direct, psi_dual, theta2, theta3, theta4, TauPoint};
use auxzeta_core::{zeta_reference, Error, Method};
use num_complex::Complex64;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn e(err: Error) -> String {
    err.to_string()
}

/// Fails with `what` unless `residual < tol`; returns the largest residual seen.
struct Worst {
    max: f64,
    what: String,
}

impl Worst {
    fn new() -> Self {
        Worst { max: 0.0, what: String::new() }
    }

    fn check(&mut self, residual: f64, tol: f64, what: impl Fn() -> String) -> Result<(), String> {
        if !(residual < tol) {
            return Err(format!("{}: residual {residual:.3e} >= {tol:.0e}", what()));
        }
        if residual > self.max {
            self.max = residual;
            self.what = what();
        }
        Ok(())
    }

    fn summary(&self) -> String {
        format!("max residual {:.3e} ({})", self.max, self.what)
    }
}

fn samples(n: usize, strategy: impl Strategy<Value = (f64, f64)>) -> Vec<(f64, f64)> {
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| strategy.new_tree(&mut runner).unwrap().current()).collect()
}

fn integer_values(p: &MethodPolicy) -> Outcome {
    let pi = PI;
    let even = [
        (0, c(-0.5, 0.0)),
        (2, c(-pi * pi / 12.0, -pi / 2.0)),
        (4, c(-7.0 * pi.powi(4) / 720.0 + pi * pi / 4.0, -pi.powi(3) / 12.0)),
        (
            6,
            c(
                -31.0 * pi.powi(6) / 30240.0 + pi.powi(4) / 24.0,
                -7.0 * pi.powi(5) / 720.0 + pi.powi(3) / 12.0,
            ),
        ),
    ];
    let odd = [
        (-1, (I / pi - 0.5) / 4.0),
        (-3, (-1.0 / (pi * pi) - I / (3.0 * pi) + 1.0 / 12.0) * (6.0 / 32.0)),
        (
            -5,
            (-I / pi.powi(3) + 1.0 / (2.0 * pi * pi) + 7.0 * I / (60.0 * pi) - 1.0 / 40.0) * (120.0 / 384.0),
        ),
    ];
    let mut w = Worst::new();
    let zero = r_eval(c(0.0, 0.0), p).map_err(e)?.value;
    w.check((zero - c(-0.5, 0.0)).norm(), 1e-8, || "dispatcher R(0)".into())?;
    for (k, want) in even {
        let s = c(k as f64, 0.0);
        let got = r_eval(s, p).map_err(e)?.value;
        w.check((got - want).norm(), 1e-8, || format!("closed form R({k})"))?;
        let q = r_direct(s, p).map_err(e)?.value;
        w.check((q - want).norm(), 1e-8, || format!("direct R({k})"))?;
    }
    for (k, want) in odd {
        let s = c(k as f64, 0.0);
        let got = r_eval(s, p).map_err(e)?.value;
        w.check((got - want).norm(), 1e-8, || format!("closed form R({k})"))?;
        let q = r_reflected(s, p).map_err(e)?.value;
        w.check((q - want).norm(), 1e-8, || format!("reflected R({k})"))?;
    }
    Ok(w.summary())
}

fn trivial_zeros(p: &MethodPolicy) -> Outcome {
    let mut w = Worst::new();
    for n in 1..=5 {
        let s = c(-2.0 * n as f64, 0.0);
        let d = r_eval(s, p).map_err(e)?;
        if d.value != c(0.0, 0.0) || d.method != Method::ClosedForm {
            return Err(format!("dispatcher R(-{}) = {} via {}", 2 * n, d.value, d.method));
        }
        let a = r_reflected(s, p).map_err(e)?.value.norm();
        w.check(a, 1e-9, || format!("reflected R(-{})", 2 * n))?;
        let b = r_theta_prime(s, p).map_err(e)?.value.norm();
        w.check(b, 1e-9, || format!("theta' R(-{})", 2 * n))?;
    }
    Ok(w.summary())
}

fn cross_method(p: &MethodPolicy) -> Outcome {
    let pts = samples(40, (-4.0..4.0f64, -20.0..20.0f64));
    let mut pairs = 0;
    let mut skipped = 0;
    let mut worst_ratio = 0.0f64;
    for (sigma, t) in pts {
        let s = c(sigma, t);
        let mut vals = Vec::new();
        for m in applicable_methods(s) {
            match r_eval(s, &p.with_method(m)) {
                Ok(r) => vals.push((m, r)),
                // a method past the edge of its accuracy envelope refuses rather than answers
                Err(Error::ToleranceNotMet { .. }) => skipped += 1,
                Err(err) => return Err(format!("{m} at {s}: {err}")),
            }
        }
        if vals.len() < 2 {
            return Err(format!("fewer than two methods at {s}"));
        }
        for i in 0..vals.len() {
            for j in i + 1..vals.len() {
                let (ma, a) = vals[i];
                let (mb, b) = vals[j];
                let d = (a.value - b.value).norm();
                let est = 3.0 * (a.abs_err + b.abs_err);
                let cap = 1e-7 * a.value.norm().max(1.0);
                if !(d <= est && d <= cap) {
                    return Err(format!("{ma} vs {mb} at {s}: |diff| {d:.3e}, 3*errors {est:.3e}, cap {cap:.3e}"));
                }
                worst_ratio = worst_ratio.max(d / est);
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs on 40 points, max |diff|/(3*errors) {worst_ratio:.3}, {skipped} evaluations refused at envelope edges"
    ))
}

fn zeta_reconstruction(p: &MethodPolicy) -> Outcome {
    let mut w = Worst::new();
    for i in 0..5 {
        for j in 0..9 {
            let s = c(-2.0 + 1.25 * i as f64, 2.5 * j as f64);
            if s == c(1.0, 0.0) {
                continue;
            }
            let got = zeta_via_r(s, p).map_err(e)?.value;
            let want = zeta_reference(s).map_err(e)?;
            w.check((got - want).norm(), 1e-7, || format!("s = {s}"))?;
        }
    }
    let z2 = zeta_via_r(c(2.0, 0.0), p).map_err(e)?.value;
    w.check((z2 - PI * PI / 6.0).norm(), 1e-9, || "zeta(2)".into())?;
    let z0 = zeta_via_r(c(0.0, 0.0), p).map_err(e)?.value;
    w.check((z0 + 0.5).norm(), 1e-9, || "zeta(0)".into())?;
    Ok(w.summary())
}

/// Zeros of `Re(e^{iϑ}ζ(1/2+it))` from the Euler–Maclaurin oracle.
fn oracle_z_roots(t0: f64, t1: f64) -> Result<Vec<f64>, String> {
    let z = |t: f64| -> Result<f64, String> {
        let v = Complex64::from_polar(1.0, theta_phase(t)) * zeta_reference(c(0.5, t)).map_err(e)?;
        Ok(v.re)
    };
    let mut roots = Vec::new();
    let step = 0.05;
    let mut a = t0;
    let mut fa = z(a)?;
    while a < t1 {
        let b = (a + step).min(t1);
        let fb = z(b)?;
        if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > 1e-12 {
                let m = 0.5 * (lo + hi);
                let fm = z(m)?;
                if fm * flo <= 0.0 {
                    hi = m;
                } else {
                    lo = m;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}

fn critical_line(p: &MethodPolicy) -> Outcome {
    let mut w = Worst::new();
    for t in [3.0, 12.0, 25.0] {
        let z = z_of_t(t, p).map_err(e)?;
        let want = zeta_reference(c(0.5, t)).map_err(e)?;
        let rebuilt = Complex64::from_polar(1.0, -theta_phase(t)) * z;
        w.check((want - rebuilt).norm(), 1e-8, || format!("zeta vs Z at t = {t}"))?;
        let lam = lambda_of_s(c(0.5, t), p).map_err(e)?.value;
        let rot = Complex64::from_polar(1.0, theta_phase(t)) * lam;
        w.check(rot.im.abs(), 1e-8, || format!("Im e^(i theta) lambda at t = {t}"))?;
    }
    let found = find_zeros_1d(CriticalFn::Z, 10.0, 30.0, 0.1, p).map_err(e)?;
    let oracle = oracle_z_roots(10.0, 30.0)?;
    if oracle.len() != 3 || found.len() != 3 {
        return Err(format!("expected 3 zeros, oracle {oracle:?}, found {:?}", found.iter().map(|r| r.t).collect::<Vec<_>>()));
    }
    for (r, o) in found.iter().zip(&oracle) {
        w.check((r.t - o).abs(), 1e-4, || format!("Z zero near {o:.4}"))?;
    }
    Ok(format!(
        "{}; Z zeros {:.4}, {:.4}, {:.4}",
        w.summary(),
        found[0].t,
        found[1].t,
        found[2].t
    ))
}

fn kuzmin_identity() -> Outcome {
    let mut w = Worst::new();
    for n in 1..=3 {
        for s in [c(0.5, 0.0), c(2.0, 1.0), c(-1.0, 0.0)] {
            let (lhs, rhs) = kuzmin_term_identity(n, s).map_err(e)?;
            w.check((lhs.value - rhs).norm(), 1e-8, || format!("n = {n}, s = {s}"))?;
        }
    }
    Ok(w.summary())
}

fn mordell(p: &MethodPolicy) -> Outcome {
    let mut w = Worst::new();
    let zs = samples(20, (0.0..1.0f64, -0.5..0.5f64));
    let taus = samples(20, (0.5..3.0f64, 0.05 * PI..0.95 * PI));
    for ((zr, zi), (m, a)) in zs.into_iter().zip(taus) {
        let z = c(zr, zi);
        let tau = Complex64::from_polar(m, a);
        let r1 = shift_one_residual(z, tau).map_err(e)?.norm();
        w.check(r1, 1e-9, || format!("z -> z+1 law at z = {z}, tau = {tau}"))?;
        let r2 = shift_tau_residual(z, tau).map_err(e)?.norm();
        w.check(r2, 1e-9, || format!("z -> z+tau law at z = {z}, tau = {tau}"))?;
    }
    let z = c(0.3, 0.0);
    for (a, b) in [(1, 1), (1, 2), (2, 3)] {
        let closed = phi_rational(z, a, b).map_err(e)?;
        let quad = phi_quadrature(z, c(a as f64 / b as f64, 0.0)).map_err(e)?.value;
        w.check((closed - quad).norm(), 1e-8, || format!("Phi at tau = {a}/{b}"))?;
    }
    for z in [c(1.0, 0.0), c(0.0, 2.0)] {
        let closed = riemann_gauss_integral(z).map_err(e)?;
        let quad = riemann_gauss_quadrature(z).map_err(e)?.value;
        w.check((closed - quad).norm(), 1e-10, || format!("Gauss integral at z = {z}"))?;
    }
    let z = c(0.5, 0.0);
    let mut sum = c(0.0, 0.0);
    let mut pow = c(1.0, 0.0);
    for n in 0..=40 {
        sum += r_eval(c(-(n as f64), 0.0), p).map_err(e)?.value * pow;
        pow *= z / (n as f64 + 1.0);
    }
    let g = riemann_gauss_integral(z).map_err(e)?;
    w.check((sum - g).norm(), 1e-8, || "generating function at z = 0.5".into())?;
    Ok(w.summary())
}

fn theta_laws() -> Outcome {
    let mut w = Worst::new();
    let om = Complex64::from_polar(1.0, PI / 4.0);
    for t in [c(0.0, 1.0), c(0.5, 1.0), c(-1.0 / 3.0, 2.0), c(0.25, 0.25)] {
        let p = TauPoint::new(t).map_err(e)?;
        let sh = TauPoint::new(t + 1.0).map_err(e)?;
        let inv = TauPoint::new(-1.0 / t).map_err(e)?;
        let root = (-I * t).sqrt();
        let f = |x: auxzeta_core::Result<Complex64>| x.map_err(e);
        let laws = [
            ("theta2(tau+1)", f(theta2(sh))? - om * f(theta2(p))?),
            ("theta3(tau+1)", f(theta3(sh))? - f(theta4(p))?),
            ("theta4(tau+1)", f(theta4(sh))? - f(theta3(p))?),
            ("theta2(-1/tau)", f(theta2(inv))? - root * f(theta4(p))?),
            ("theta3(-1/tau)", f(theta3(inv))? - root * f(theta3(p))?),
            ("theta4(-1/tau)", f(theta4(inv))? - root * f(theta2(p))?),
        ];
        for (name, r) in laws {
            w.check(r.norm(), 1e-12, || format!("{name} at tau = {t}"))?;
        }
    }
    w.check((psi_direct(1.0) - psi_dual(1.0)).abs(), 1e-12, || "psi seam".into())?;
    Ok(w.summary())
}

fn lavrik(p: &MethodPolicy) -> Outcome {
    let mut w = Worst::new();
    for s in [c(2.0, 0.0), c(0.5, 5.0)] {
        let l = lavrik_l(I, s, p).map_err(e)?.value;
        let r = r_eval(s, p).map_err(e)?.value;
        w.check((l - r).norm(), 1e-8, || format!("L(i, s) at s = {s}"))?;
    }
    let tau = Complex64::from_polar(1.0, PI / 4.0);
    let s = c(0.5, 3.0);
    let l = lavrik_l(tau, s, p).map_err(e)?.value;
    let dual = lavrik_l(tau, 1.0 - s.conj(), p).map_err(e)?.value;
    let z = l + chi(s).map_err(e)? * dual.conj();
    w.check((z - zeta_reference(s).map_err(e)?).norm(), 1e-7, || "zeta identity at tau = e^(i pi/4)".into())?;
    Ok(w.summary())
}

fn lambda_residue(p: &MethodPolicy) -> (Outcome, Outcome) {
    let s = c(1.0 + 1e-3, 0.0);
    match lambda_of_s(s, p) {
        Ok(v) => {
            let res = (s - 1.0) * v.value;
            let stated = (res - 1.0).norm();
            let one = if stated < 5e-3 {
                Ok(format!("(s-1) lambda = {res:.6}"))
            } else {
                Err(format!(
                    "(s-1) lambda(1.001) = {res:.6}, |. - 1| = {stated:.3}; unattainable, the residue is i"
                ))
            };
            let alt = (res - I).norm();
            let i_check = if alt < 5e-3 {
                Ok(format!("|(s-1) lambda - i| = {alt:.3e}"))
            } else {
                Err(format!("|(s-1) lambda - i| = {alt:.3e}"))
            };
            (one, i_check)
        }
        Err(err) => (Err(e(err.clone())), Err(e(err))),
    }
}

fn lambda_offline_zero(p: &MethodPolicy) -> Outcome {
    let region = Region::new(-5.0, 5.0, 120.0, 150.0, 81, 241).map_err(e)?;
    let search = find_lambda_zero_2d(&region, p).map_err(e)?;
    for z in &search.zeros {
        if z.winding != 1 || !(z.residual < 1e-5) {
            return Err(format!("zero {} has winding {} and residual {:.2e}", z.s, z.winding, z.residual));
        }
    }
    let off: Vec<_> = search.zeros.iter().filter(|z| (z.s.re - 0.5).abs() > 0.1).collect();
    match off.first() {
        Some(z) => Ok(format!(
            "{} zeros, {} off the line, e.g. s = {:.10} (|lambda| {:.1e}, winding {}); {} failed candidates",
            search.zeros.len(),
            off.len(),
            z.s,
            z.residual,
            z.winding,
            search.failures.len()
        )),
        None => Err(format!("{} zeros, none off the critical line", search.zeros.len())),
    }
}

fn main() -> ExitCode {
    let p = MethodPolicy::default();
    let (residue, residue_i) = lambda_residue(&p);
    let rows: Vec<(&str, &str, Outcome, bool)> = vec![
        ("1", "integer values", integer_values(&p), true),
        ("2", "trivial zeros", trivial_zeros(&p), true),
        ("3", "cross-representation agreement", cross_method(&p), true),
        ("4", "zeta reconstruction", zeta_reconstruction(&p), true),
        ("5", "critical line", critical_line(&p), true),
        ("6", "kuzmin single-term identity", kuzmin_identity(), true),
        ("7", "mordell integral", mordell(&p), true),
        ("8", "theta laws", theta_laws(), true),
        ("9", "lavrik family", lavrik(&p), true),
        ("10a", "lambda residue 1 at s = 1", residue, false),
        ("10a+", "lambda residue i at s = 1", residue_i, true),
        ("10b", "lambda off-line zero", lambda_offline_zero(&p), true),
    ];
    let mut failed = 0;
    for (id, name, outcome, gating) in &rows {
        match outcome {
            Ok(msg) => println!("PASS {id:<5} {name}: {msg}"),
            Err(msg) => {
                println!("FAIL {id:<5} {name}: {msg}");
                if *gating {
                    failed += 1;
                }
            }
        }
    }
    if failed > 0 {
        println!("{failed} gating criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

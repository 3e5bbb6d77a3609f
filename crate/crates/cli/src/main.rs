#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use auxzeta_core::auxiliary::{r_eval, MethodPolicy};
use auxzeta_core::bridge::{
    critical_point, find_lambda_zero_2d, find_zeros_1d, find_zeros_2d, grid_values, lambda_of_s, xray_signs,
    zeta_via_r, CriticalFn, Region, ZeroSearch,
};
use auxzeta_core::mordell::phi_quadrature;
use auxzeta_core::selftest::{run_selftest, SelftestOptions};
use auxzeta_core::theta::{theta_series, TauPoint, ThetaKind};
use auxzeta_core::{ComplexValue, Error, EvalResult, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use rayon::prelude::*;
use serde_json::Value;

use args::{Cli, EvalArgs, Format, GridArgs, RegionSpec, SelftestArgs, TableArgs, Target, Verb, ZerosArgs};
use output::{csv_row, full, full_num, short, short_num, Object};

/// Exit statuses.
const OK: u8 = 0;
const SELFTEST_FAILED: u8 = 1;
const NUMERICAL: u8 = 3;
const DOMAIN: u8 = 4;

fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, msg).exit()
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::Pole { .. } | Error::Domain(_) | Error::ContourSingularity { .. } | Error::DegeneratePrefactor { .. } => {
            DOMAIN
        }
        _ => NUMERICAL,
    }
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = writeln!(out, "{text}");
}

fn json(v: &Value) -> String {
    serde_json::to_string(v).expect("serialising a JSON value")
}

fn complex_json(z: ComplexValue) -> Value {
    Object::new().put("re", full_num(z.re)).put("im", full_num(z.im)).value()
}

fn eval_target(a: &EvalArgs, policy: &MethodPolicy) -> Result<(Object, EvalResult)> {
    let need_s = || a.s.unwrap_or_else(|| usage(format!("eval --target {} needs --s", a.target.name())));
    let need_t = || a.t.unwrap_or_else(|| usage(format!("eval --target {} needs --t", a.target.name())));
    let need_tau = || a.tau.unwrap_or_else(|| usage(format!("eval --target {} needs --tau", a.target.name())));
    let head = Object::new().put("target", a.target.name());
    Ok(match a.target {
        Target::R => {
            let s = need_s();
            (head.put("s", complex_json(s)), r_eval(s, policy)?)
        }
        Target::Zeta => {
            let s = need_s();
            (head.put("s", complex_json(s)), zeta_via_r(s, policy)?)
        }
        Target::Lambda => {
            let s = need_s();
            (head.put("s", complex_json(s)), lambda_of_s(s, policy)?)
        }
        Target::Z | Target::Y => {
            let t = need_t();
            if !t.is_finite() {
                usage("--t must be finite");
            }
            let cp = critical_point(t, policy)?;
            let v = if a.target == Target::Z { cp.z } else { cp.y };
            let r = EvalResult::new(ComplexValue::new(v, 0.0), cp.abs_err, auxzeta_core::Method::ZetaBridge, 2);
            (head.put("t", full_num(t)), r)
        }
        Target::Phi => {
            let z = a.z.unwrap_or_else(|| usage("eval --target phi needs --z"));
            let tau = need_tau();
            (
                head.put("z", complex_json(z)).put("tau", complex_json(tau)),
                phi_quadrature(z, tau)?,
            )
        }
        Target::Theta3 => {
            let tau = need_tau();
            (head.put("tau", complex_json(tau)), theta_series(ThetaKind::Theta3, TauPoint::new(tau)?)?)
        }
    })
}

fn run_eval(a: &EvalArgs) -> Result<()> {
    let policy = a.policy.policy();
    let (head, r) = eval_target(a, &policy)?;
    match a.format {
        Format::Json => {
            let v = head
                .put("re", full_num(r.value.re))
                .put("im", full_num(r.value.im))
                .put("abs_err", short_num(r.abs_err))
                .put("method", r.method.tag())
                .put("terms_or_nodes", r.terms_or_nodes)
                .value();
            emit(&json(&v));
        }
        Format::Csv => {
            emit("re,im,abs_err,method,terms_or_nodes");
            emit(&csv_row(&[
                full(r.value.re),
                full(r.value.im),
                short(r.abs_err),
                r.method.tag().to_string(),
                r.terms_or_nodes.to_string(),
            ]));
        }
    }
    Ok(())
}

fn region(spec: RegionSpec, n: (usize, usize)) -> Region {
    Region::new(spec.sigma_min, spec.sigma_max, spec.t_min, spec.t_max, n.0, n.1).unwrap_or_else(|e| usage(e))
}

/// The complex-valued targets of `s`.
fn s_function(target: Target, policy: MethodPolicy) -> impl Fn(ComplexValue) -> Result<EvalResult> + Sync {
    if !matches!(target, Target::R | Target::Zeta | Target::Lambda) {
        usage(format!("target {} is not a function of s; use R, zeta or lambda", target.name()));
    }
    move |s| match target {
        Target::R => r_eval(s, &policy),
        Target::Zeta => zeta_via_r(s, &policy),
        _ => lambda_of_s(s, &policy),
    }
}

fn run_grid(a: &GridArgs, signs_only: bool) -> Result<()> {
    let f = s_function(a.target, a.policy.policy());
    let reg = region(a.region, a.n);
    reg.check_envelope()?;
    let mut lines = Vec::new();
    if signs_only {
        lines.push("sigma,t,sign_re,sign_im".to_string());
        for c in xray_signs(&reg, f)? {
            lines.push(csv_row(&[full(c.sigma), full(c.t), c.sign_re.to_string(), c.sign_im.to_string()]));
        }
    } else {
        lines.push("sigma,t,re,im,abs_err,method".to_string());
        for g in grid_values(&reg, f)? {
            lines.push(csv_row(&[
                full(g.sigma),
                full(g.t),
                full(g.result.value.re),
                full(g.result.value.im),
                short(g.result.abs_err),
                g.result.method.tag().to_string(),
            ]));
        }
    }
    emit(&lines.join("\n"));
    Ok(())
}

fn report_failures(search: &ZeroSearch) {
    for f in &search.failures {
        eprintln!("candidate near {} not refined: {}", f.start, f.error);
    }
}

fn run_zeros(a: &ZerosArgs) -> Result<()> {
    let policy = a.policy.policy();
    let entries: Vec<Value> = match a.target {
        Target::Z | Target::Y => {
            let (t0, t1) = a.interval.unwrap_or_else(|| usage("zeros of Z or Y need --interval t0:t1"));
            if !(a.step > 0.0) {
                usage("--step must be positive");
            }
            let which = if a.target == Target::Z { CriticalFn::Z } else { CriticalFn::Y };
            find_zeros_1d(which, t0, t1, a.step, &policy)?
                .into_iter()
                .map(|r| {
                    Object::new()
                        .put("t", full_num(r.t))
                        .put("bracket", vec![full_num(r.bracket.0), full_num(r.bracket.1)])
                        .value()
                })
                .collect()
        }
        Target::Lambda | Target::Zeta => {
            let spec = a.region.unwrap_or_else(|| usage("zeros of lambda or zeta need --region"));
            let reg = region(spec, a.n);
            let search = if a.target == Target::Lambda {
                find_lambda_zero_2d(&reg, &policy)?
            } else {
                if reg.contains(ComplexValue::new(1.0, 0.0)) {
                    return Err(Error::Domain("region contains the pole s = 1".into()));
                }
                reg.check_envelope()?;
                find_zeros_2d(|s| Ok(zeta_via_r(s, &policy)?.value), &reg, 1e-6)?
            };
            report_failures(&search);
            search
                .zeros
                .iter()
                .map(|z| {
                    Object::new()
                        .put("sigma", full_num(z.s.re))
                        .put("t", full_num(z.s.im))
                        .put("winding", z.winding)
                        .put("residual", short_num(z.residual))
                        .value()
                })
                .collect()
        }
        other => usage(format!("zeros are available for Z, Y, lambda and zeta, not {}", other.name())),
    };
    emit(&json(&Value::Array(entries)));
    Ok(())
}

fn run_table(a: &TableArgs) -> Result<()> {
    let policy = a.policy.policy();
    let (t0, t1) = a.interval;
    if !(a.step > 0.0) {
        usage("--step must be positive");
    }
    let n = ((t1 - t0) / a.step + 1e-9).floor() as usize + 1;
    let rows: Vec<String> = (0..n)
        .into_par_iter()
        .map(|k| {
            let t = t0 + k as f64 * a.step;
            critical_point(t, &policy)
                .map(|cp| csv_row(&[full(t), full(cp.theta), full(cp.z), full(cp.y), short(cp.abs_err)]))
        })
        .collect::<Result<_>>()?;
    emit(&format!("t,theta,Z,Y,abs_err\n{}", rows.join("\n")));
    Ok(())
}

fn run_selftest_verb(a: &SelftestArgs) -> u8 {
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            usage("--tol must be positive");
        }
    }
    let report = run_selftest(SelftestOptions {
        quick: a.quick,
        tol: a.tol,
    });
    emit(&report.to_string());
    if report.passed() {
        OK
    } else {
        SELFTEST_FAILED
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("auxzeta: {e}");
        }
    }
    let result = match &cli.verb {
        Verb::Eval(a) => run_eval(a),
        Verb::Grid(a) => run_grid(a, false),
        Verb::Xray(a) => run_grid(a, true),
        Verb::Zeros(a) => run_zeros(a),
        Verb::Table(a) => run_table(a),
        Verb::Selftest(a) => return ExitCode::from(run_selftest_verb(a)),
    };
    match result {
        Ok(()) => ExitCode::from(OK),
        Err(e) => {
            eprintln!("auxzeta: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

//! `alphacalc` command line.
//!
//! Series results go to standard output as canonical JSON, sampled results as
//! CSV. Exit codes: 0 success, 1 domain or math error, 2 usage error.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::alpha_calc::{alpha_deriv_iter, alpha_integral, rl_deriv_series, AlphaOrder};
use crate::alpha_exp::{alpha_exp_eval, alpha_exp_series};
use crate::checks::{run_suite, Suite};
use crate::encoding::to_value;
use crate::error::Error;
use crate::madelung::{
    derivation_audit, derived_split, hj_residual, continuity_residual, quantum_potential,
    sample_qpotential, samples_to_csv, Grid, MadelungState,
};
use crate::numeric::{Domain, Rational};
use crate::parser::{parse_any, parse_rational, parse_series};
use crate::puiseux::{exact_to_approx_series, AnySeries};
use crate::ExactSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "alphacalc", version, about = "Exact Puiseux-series calculus for the Leibnitz-rule alpha-derivative")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// m-fold alpha-derivative of a series.
    Deriv(DerivArgs),
    /// Alpha-integral of a series.
    Integrate(SeriesArgs),
    /// Riemann-Liouville derivative of order alpha (approximate coefficients).
    Rl(RlArgs),
    /// Truncated alpha-exponent series, optionally evaluated.
    Exp(ExpArgs),
    /// Quantum potential Q_alpha as a series, or sampled on a grid as CSV.
    Qpot(QpotArgs),
    /// Residuals of the split equations for supplied R, S, R_t, S_t, V.
    Madelung(MadelungArgs),
    /// Seeded law-check suite.
    Check(CheckArgs),
}

fn alpha_flag(s: &str) -> Result<AlphaOrder, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn rational_flag(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn domain_flag(s: &str) -> Result<Domain, String> {
    match s {
        "exact" => Ok(Domain::Exact),
        "approx" => Ok(Domain::Approx),
        other => Err(format!("expected `exact` or `approx`, got `{other}`")),
    }
}

fn grid_flag(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(long, value_parser = alpha_flag)]
    alpha: AlphaOrder,
    /// Puiseux polynomial, e.g. "x^(3/2) + 2*x".
    #[arg(long)]
    expr: String,
    #[arg(long, default_value = "exact", value_parser = domain_flag)]
    domain: Domain,
}

#[derive(Debug, Args)]
struct DerivArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Number of applications.
    #[arg(long, default_value_t = 1)]
    times: u32,
}

#[derive(Debug, Args)]
struct RlArgs {
    #[arg(long, value_parser = alpha_flag)]
    alpha: AlphaOrder,
    #[arg(long)]
    expr: String,
}

#[derive(Debug, Args)]
struct ExpArgs {
    #[arg(long, value_parser = alpha_flag)]
    alpha: AlphaOrder,
    /// Highest retained power k of (x^alpha/alpha)^k/k!.
    #[arg(long, default_value_t = 16)]
    terms: u32,
    /// Evaluate the truncated series and the closed form at z > 0.
    #[arg(long)]
    at: Option<f64>,
}

#[derive(Debug, Args)]
struct QpotArgs {
    #[arg(long, value_parser = alpha_flag)]
    alpha: AlphaOrder,
    #[arg(long = "R")]
    r: String,
    #[arg(long = "Dalpha", value_parser = rational_flag)]
    dalpha: Rational,
    #[arg(long, value_parser = rational_flag)]
    hbar: Rational,
    #[arg(long, default_value = "16", value_parser = rational_flag)]
    trunc: Rational,
    /// start:stop:step, stop included within half a step.
    #[arg(long, value_parser = grid_flag)]
    grid: Option<Grid>,
}

#[derive(Debug, Args)]
struct MadelungArgs {
    #[arg(long, value_parser = alpha_flag)]
    alpha: AlphaOrder,
    #[arg(long = "R")]
    r: String,
    #[arg(long = "S")]
    s: String,
    #[arg(long = "Rt", default_value = "0")]
    r_t: String,
    #[arg(long = "St", default_value = "0")]
    s_t: String,
    #[arg(long = "V", default_value = "0")]
    v: String,
    #[arg(long = "Dalpha", value_parser = rational_flag)]
    dalpha: Rational,
    #[arg(long, value_parser = rational_flag)]
    hbar: Rational,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// One of leibnitz, chain, commute, fundamental, rl-gap, exp-ode, madelung-audit.
    suite: String,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    cases: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure tagged with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(flag: &str, e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("error: invalid value for {flag}: {e}"),
        }
    }

    fn math(context: &str, e: Error) -> Self {
        Failure {
            code: EXIT_MATH,
            message: format!("error: {context}: {e}"),
        }
    }
}

type Step<T> = std::result::Result<T, Failure>;

/// Parses an expression flag. Syntax errors are usage errors.
fn expr_flag(flag: &str, text: &str, domain: Domain) -> Step<AnySeries> {
    parse_any(text, domain).map_err(|e| match e {
        Error::Syntax { .. } | Error::ZeroDenominator => Failure::usage(&format!("--{flag}"), e),
        other => Failure::math(&format!("--{flag}"), other),
    })
}

fn exact_flag(flag: &str, text: &str) -> Step<ExactSeries> {
    parse_series(text).map_err(|e| match e {
        Error::Syntax { .. } | Error::ZeroDenominator => Failure::usage(&format!("--{flag}"), e),
        other => Failure::math(&format!("--{flag}"), other),
    })
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON value serialises");
    s.push('\n');
    s
}

fn series_line(f: AnySeries) -> String {
    json_line(&to_value(&f))
}

fn exact_value(f: &ExactSeries) -> Value {
    to_value(&AnySeries::Exact(f.clone()))
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut stderr = String::new();
    match dispatch(cli.command, &mut stderr) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr },
        Err(f) => {
            stderr.push_str(&f.message);
            stderr.push('\n');
            Outcome { code: f.code, stdout: String::new(), stderr }
        }
    }
}

fn dispatch(command: Command, stderr: &mut String) -> Step<(i32, String)> {
    match command {
        Command::Deriv(a) => {
            let f = expr_flag("expr", &a.series.expr, a.series.domain)?;
            let alpha = &a.series.alpha;
            let out = match f {
                AnySeries::Exact(f) => AnySeries::Exact(alpha_deriv_iter(&f, alpha, a.times)),
                AnySeries::Approx(f) => AnySeries::Approx(alpha_deriv_iter(&f, alpha, a.times)),
            };
            Ok((EXIT_OK, series_line(out)))
        }
        Command::Integrate(a) => {
            let f = expr_flag("expr", &a.expr, a.domain)?;
            let out = match f {
                AnySeries::Exact(f) => alpha_integral(&f, &a.alpha).map(AnySeries::Exact),
                AnySeries::Approx(f) => alpha_integral(&f, &a.alpha).map(AnySeries::Approx),
            }
            .map_err(|e| Failure::math("--expr", e))?;
            Ok((EXIT_OK, series_line(out)))
        }
        Command::Rl(a) => {
            let f = exact_flag("expr", &a.expr)?;
            let f = exact_to_approx_series(&f).map_err(|e| Failure::math("--expr", e))?;
            let out = rl_deriv_series(&f, &a.alpha).map_err(|e| Failure::math("--expr", e))?;
            Ok((EXIT_OK, series_line(AnySeries::Approx(out))))
        }
        Command::Exp(a) => {
            let e = alpha_exp_series(&a.alpha, a.terms).map_err(|e| Failure::math("--terms", e))?;
            match a.at {
                None => Ok((EXIT_OK, series_line(AnySeries::Exact(e.series)))),
                Some(z) => {
                    let closed = alpha_exp_eval(z, &a.alpha).map_err(|e| Failure::math("--at", e))?;
                    let approx = exact_to_approx_series(&e.series).map_err(|e| Failure::math("--terms", e))?;
                    let partial = approx.eval(z).map_err(|e| Failure::math("--at", e))?.re;
                    let v = json!({
                        "z": z,
                        "alpha": a.alpha.to_string(),
                        "terms": a.terms,
                        "series": partial,
                        "closed_form": closed,
                    });
                    Ok((EXIT_OK, json_line(&v)))
                }
            }
        }
        Command::Qpot(a) => {
            let r = exact_flag("R", &a.r)?;
            match a.grid {
                None => {
                    let q = quantum_potential(&r, &a.alpha, &a.dalpha, &a.hbar, &a.trunc)
                        .map_err(|e| Failure::math("--R", e))?;
                    Ok((EXIT_OK, series_line(AnySeries::Exact(q))))
                }
                Some(grid) => {
                    let q = quantum_potential(&r, &a.alpha, &a.dalpha, &a.hbar, &a.trunc)
                        .map_err(|e| Failure::math("--R", e))?;
                    let leading = q
                        .order()
                        .map(|v| v.to_string())
                        .unwrap_or_else(|_| "none".to_string());
                    stderr.push_str(&format!(
                        "Q_alpha known below x^({}); leading order {leading}\n",
                        q.trunc()
                    ));
                    let samples = sample_qpotential(&r, &a.alpha, &a.dalpha, &a.hbar, &a.trunc, &grid)
                        .map_err(|e| Failure::math("--grid", e))?;
                    Ok((EXIT_OK, samples_to_csv(&samples)))
                }
            }
        }
        Command::Madelung(a) => {
            let state = MadelungState::new(
                exact_flag("R", &a.r)?,
                exact_flag("S", &a.s)?,
                exact_flag("Rt", &a.r_t)?,
                exact_flag("St", &a.s_t)?,
                exact_flag("V", &a.v)?,
                a.hbar,
                a.dalpha,
                a.alpha,
            )
            .map_err(|e| Failure::usage("--hbar", e))?;
            let (audit_im, audit_re) = derivation_audit(
                &state.r,
                &state.s,
                &state.s_t,
                &state.r_t,
                &state.alpha,
                &state.hbar,
            );
            let derived = match derived_split(&state) {
                Ok(d) => json!({
                    "continuity": exact_value(&d.continuity),
                    "hamilton_jacobi": exact_value(&d.hamilton_jacobi),
                }),
                Err(_) => Value::Null,
            };
            let v = json!({
                "continuity": exact_value(&continuity_residual(&state)),
                "hamilton_jacobi": exact_value(&hj_residual(&state)),
                "derived": derived,
                "audit": {
                    "imag": exact_value(&audit_im),
                    "real": exact_value(&audit_re),
                },
            });
            Ok((EXIT_OK, json_line(&v)))
        }
        Command::Check(a) => {
            let suite: Suite = a
                .suite
                .parse()
                .map_err(|e| Failure::usage("<SUITE>", e))?;
            let report = run_suite(suite, a.cases as usize, a.seed)
                .map_err(|e| Failure::math("check", e))?;
            let code = if report.all_passed() { EXIT_OK } else { EXIT_MATH };
            Ok((code, report.to_string()))
        }
    }
}

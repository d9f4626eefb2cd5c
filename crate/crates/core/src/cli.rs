//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, parse or solver error, 2 forbidden-set hit
//! within the requested horizon (the report is still printed), 3 failed
//! numerical or randomized verification.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::binet::{binet_eval, BinetEvaluator};
use crate::closed_form::{forbidden_scan, tetranacci_report, ClosedFormSolution, ForbiddenReport};
use crate::oracle::{compare_against, iterate_system, Status, TrajectoryReport};
use crate::quartic::{solve_characteristic_with, vieta_check, CLUSTER_TOLERANCE};
use crate::sequences::{j_seq, SeqRS};
use crate::types::{rational_parse, to_f64, InitialState, Params, Rational, SolverError};
use crate::verify::{run_campaign, CampaignConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_FORBIDDEN: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tetrasolve",
    version,
    about = "Closed-form solutions of a third-order system of rational difference equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational_parse(s).map_err(|e| e.to_string())
}

fn parse_block(s: &str) -> Result<[Rational; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated values, got {}", parts.len()));
    }
    let mut out = Vec::with_capacity(4);
    for p in parts {
        out.push(parse_rational(p)?);
    }
    Ok(out.try_into().expect("four values"))
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, value_parser = parse_rational, allow_negative_numbers = true)]
    pub a: Rational,
    #[arg(long, value_parser = parse_rational, allow_negative_numbers = true)]
    pub b: Rational,
    #[arg(long, value_parser = parse_rational, allow_negative_numbers = true)]
    pub c: Rational,
    #[arg(long, value_parser = parse_rational, allow_negative_numbers = true)]
    pub d: Rational,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, SolverError> {
        Params::new(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }
}

#[derive(Debug, Clone, Args)]
pub struct InitArgs {
    #[arg(long = "x-2", value_parser = parse_rational, allow_negative_numbers = true)]
    pub x_m2: Rational,
    #[arg(long = "x-1", value_parser = parse_rational, allow_negative_numbers = true)]
    pub x_m1: Rational,
    #[arg(long = "x0", value_parser = parse_rational, allow_negative_numbers = true)]
    pub x_0: Rational,
    #[arg(long = "y-2", value_parser = parse_rational, allow_negative_numbers = true)]
    pub y_m2: Rational,
    #[arg(long = "y-1", value_parser = parse_rational, allow_negative_numbers = true)]
    pub y_m1: Rational,
    #[arg(long = "y0", value_parser = parse_rational, allow_negative_numbers = true)]
    pub y_0: Rational,
}

impl InitArgs {
    fn init(&self) -> Result<InitialState, SolverError> {
        InitialState::new(
            self.x_m2.clone(),
            self.x_m1.clone(),
            self.x_0.clone(),
            self.y_m2.clone(),
            self.y_m1.clone(),
            self.y_0.clone(),
        )
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the roots of the characteristic quartic.
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        /// Minimum separation between distinct roots, relative to the root scale.
        #[arg(long, default_value_t = CLUSTER_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print J_0..=J_n exactly, optionally with R_n and S_n.
    Seq {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "n", visible_alias = "horizon", default_value_t = 10)]
        n: usize,
        /// R_{-3},R_{-2},R_{-1},R_0 (use --r-init=... for negative entries).
        #[arg(long = "r-init", value_parser = parse_block, requires = "s_init")]
        r_init: Option<[Rational; 4]>,
        /// S_{-3},S_{-2},S_{-1},S_0.
        #[arg(long = "s-init", value_parser = parse_block, requires = "r_init")]
        s_init: Option<[Rational; 4]>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare the Binet formula of the detected case with exact J_n.
    Binet {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "n", visible_alias = "horizon", default_value_t = 25)]
        n: usize,
        /// Largest accepted relative error.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Closed-form trajectory through the given maximum index, checked
    /// against direct iteration.
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        init: InitArgs,
        #[arg(long = "horizon", visible_alias = "n", default_value_t = 10)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Scan A_0..=A_n and B_0..=B_n for zeros.
    Forbidden {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        init: InitArgs,
        #[arg(long = "n", visible_alias = "horizon", default_value_t = 20)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Randomized campaign comparing the closed form with direct iteration.
    Verify {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "horizon", visible_alias = "n", default_value_t = 40)]
        horizon: usize,
        #[arg(long = "coeff-range", default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..))]
        coeff_range: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The a = b = c = d = 1 system, annotated with Tetranacci numbers.
    Tetranacci {
        #[command(flatten)]
        init: InitArgs,
        #[arg(long = "horizon", visible_alias = "n", default_value_t = 10)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Exit code together with everything destined for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

impl Outcome {
    fn new(code: u8, stdout: String) -> Self {
        Self { code, stdout }
    }
}

fn q(v: &Rational) -> Value {
    Value::String(v.to_string())
}

fn qs(vs: &[Rational]) -> Value {
    Value::Array(vs.iter().map(q).collect())
}

fn dec(v: &Rational) -> String {
    format!("{:.16e}", to_f64(v))
}

fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn params_json(p: &Params) -> Value {
    json!({ "a": q(p.a()), "b": q(p.b()), "c": q(p.c()), "d": q(p.d()) })
}

fn init_json(init: &InitialState) -> Value {
    let [x_m2, x_m1, x_0] = init.x();
    let [y_m2, y_m1, y_0] = init.y();
    json!({
        "x_-2": q(x_m2), "x_-1": q(x_m1), "x_0": q(x_0),
        "y_-2": q(y_m2), "y_-1": q(y_m1), "y_0": q(y_0),
    })
}

fn status_json(s: &Status) -> Value {
    serde_json::to_value(s).expect("status serializes")
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn roots(params: &Params, tolerance: f64, format: Format) -> Result<Outcome, SolverError> {
    let rc = solve_characteristic_with(params, tolerance)?;
    let vieta = vieta_check(&rc, params);
    let out = match format {
        Format::Json => {
            let names = ["alpha", "beta", "gamma", "delta"];
            let labels: serde_json::Map<String, Value> = names
                .iter()
                .zip(rc.labeled())
                .map(|(n, z)| (n.to_string(), complex(z)))
                .collect();
            render(&json!({
                "params": params_json(params),
                "case": rc.case_tag.to_string(),
                "roots": rc.roots.iter().map(|&(z, m)| json!({
                    "re": z.re, "im": z.im, "multiplicity": m,
                })).collect::<Vec<_>>(),
                "labels": labels,
                "vieta_residual": vieta,
                "cluster_tolerance": rc.cluster_tolerance_used,
            }))
        }
        Format::Csv => {
            let mut s = String::from("case,re,im,multiplicity\n");
            for &(z, m) in &rc.roots {
                let _ = writeln!(s, "{},{:.16e},{:.16e},{m}", rc.case_tag, z.re, z.im);
            }
            s
        }
    };
    Ok(Outcome::new(EXIT_OK, out))
}

fn seq(
    params: &Params,
    n: usize,
    rs: Option<([Rational; 4], [Rational; 4])>,
    format: Format,
) -> Outcome {
    let j = j_seq(params, n);
    let js = &j.values()[..=n];
    let rs_seq = rs.map(|(r, s)| {
        let mut seq = SeqRS::new(params.clone(), r, s);
        seq.extend_to(n);
        seq
    });
    let out = match (format, &rs_seq) {
        (Format::Json, None) => render(&qs(js)),
        (Format::Json, Some(rs)) => {
            let r: Vec<Rational> = (-3..=n as isize).map(|i| rs.r(i).clone()).collect();
            let s: Vec<Rational> = (-3..=n as isize).map(|i| rs.s(i).clone()).collect();
            render(&json!({ "J": qs(js), "R": qs(&r), "S": qs(&s), "R_S_first_index": -3 }))
        }
        (Format::Csv, None) => {
            let mut s = String::from("n,J,J_decimal\n");
            for (i, v) in js.iter().enumerate() {
                let _ = writeln!(s, "{i},{v},{}", dec(v));
            }
            s
        }
        (Format::Csv, Some(rs)) => {
            let mut s = String::from("n,J,J_decimal,R,R_decimal,S,S_decimal\n");
            for i in -3..=n as isize {
                let (jv, jd) = if i >= 0 {
                    let v = &js[i as usize];
                    (v.to_string(), dec(v))
                } else {
                    (String::new(), String::new())
                };
                let (r, sv) = (rs.r(i), rs.s(i));
                let _ = writeln!(s, "{i},{jv},{jd},{r},{},{sv},{}", dec(r), dec(sv));
            }
            s
        }
    };
    Outcome::new(EXIT_OK, out)
}

fn binet(params: &Params, n: usize, tolerance: f64, format: Format) -> Result<Outcome, SolverError> {
    let ev = BinetEvaluator::new(params)?;
    let j = j_seq(params, n);
    let mut rows = Vec::with_capacity(n + 1);
    let mut worst = 0.0f64;
    for i in 0..=n {
        let z = binet_eval(&ev, i)?;
        let exact = to_f64(&j[i]);
        if !exact.is_finite() {
            return Err(SolverError::NonFiniteNumeric);
        }
        let err = (z.re - exact).abs() / exact.abs().max(1.0);
        worst = worst.max(err);
        rows.push((i, z, &j[i], err));
    }
    let pass = worst <= tolerance;
    let out = match format {
        Format::Json => render(&json!({
            "case": ev.case_tag().to_string(),
            "rows": rows.iter().map(|(i, z, e, err)| json!({
                "n": i, "binet": z.re, "binet_im": z.im, "exact": q(e), "relative_error": err,
            })).collect::<Vec<_>>(),
            "max_relative_error": worst,
            "tolerance": tolerance,
            "pass": pass,
        })),
        Format::Csv => {
            let mut s = String::from("case,n,binet,binet_im,exact,exact_decimal,relative_error\n");
            for (i, z, e, err) in &rows {
                let _ = writeln!(
                    s,
                    "{},{i},{:.16e},{:.16e},{e},{},{err:.6e}",
                    ev.case_tag(),
                    z.re,
                    z.im,
                    dec(e)
                );
            }
            s
        }
    };
    Ok(Outcome::new(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED }, out))
}

fn trajectory_output(
    params: &Params,
    init: &InitialState,
    report: &TrajectoryReport,
    format: Format,
    extra: Vec<(&str, Value)>,
) -> Outcome {
    let agrees = report.comparison.as_ref().is_some_and(|c| c.agrees());
    let last = report.last_index();
    let out = match format {
        Format::Json => {
            let values: Vec<Value> = (-2..=last)
                .map(|n| {
                    json!({
                        "n": n,
                        "x": q(report.x(n).expect("stored")),
                        "y": q(report.y(n).expect("stored")),
                    })
                })
                .collect();
            let mut obj = serde_json::Map::new();
            obj.insert("params".into(), params_json(params));
            obj.insert("initial".into(), init_json(init));
            obj.insert("horizon".into(), json!(report.horizon));
            obj.insert("status".into(), status_json(&report.status));
            obj.insert("values".into(), Value::Array(values));
            obj.insert("oracle_agrees".into(), json!(agrees));
            for (k, v) in extra {
                obj.insert(k.into(), v);
            }
            render(&Value::Object(obj))
        }
        Format::Csv => {
            let mut s = String::from("n,x,x_decimal,y,y_decimal\n");
            for n in -2..=last {
                let x = report.x(n).expect("stored");
                let y = report.y(n).expect("stored");
                let _ = writeln!(s, "{n},{x},{},{y},{}", dec(x), dec(y));
            }
            s
        }
    };
    let code = if report.status.cutoff_index().is_some() {
        EXIT_FORBIDDEN
    } else if !agrees {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    };
    Outcome::new(code, out)
}

fn solve(params: &Params, init: &InitialState, horizon: usize, format: Format) -> Outcome {
    let solution = ClosedFormSolution::for_max_index(params.clone(), init.clone(), horizon);
    let mut report = solution.trajectory(horizon);
    let oracle = iterate_system(params, init, horizon);
    report.comparison = Some(compare_against(&oracle, &solution));
    let first = solution
        .forbidden()
        .first_hit()
        .map(|h| json!({ "n": h.n, "which": h.which }))
        .unwrap_or(Value::Null);
    trajectory_output(params, init, &report, format, vec![("first_forbidden", first)])
}

fn forbidden_json(report: &ForbiddenReport) -> Value {
    json!({
        "hits": report.hits.iter().map(|h| json!({
            "n": h.n, "which": h.which, "value": q(&h.value),
        })).collect::<Vec<_>>(),
        "A": qs(&report.a_values),
        "B": qs(&report.b_values),
        "cutoff": report.cutoff().map(|(index, equation)| json!({
            "index": index, "equation": equation,
        })),
    })
}

fn forbidden(params: &Params, init: &InitialState, n: usize, format: Format) -> Outcome {
    let report = forbidden_scan(params, init, n);
    let out = match format {
        Format::Json => {
            let mut v = forbidden_json(&report);
            v["params"] = params_json(params);
            v["initial"] = init_json(init);
            v["n"] = json!(n);
            render(&v)
        }
        Format::Csv => {
            let mut s = String::from("m,A,A_decimal,B,B_decimal\n");
            for (m, (a, b)) in report.a_values.iter().zip(&report.b_values).enumerate() {
                let _ = writeln!(s, "{m},{a},{},{b},{}", dec(a), dec(b));
            }
            s
        }
    };
    let code = if report.hits.is_empty() { EXIT_OK } else { EXIT_FORBIDDEN };
    Outcome::new(code, out)
}

fn verify(config: CampaignConfig, format: Format) -> Outcome {
    let summary = run_campaign(&config);
    let out = match format {
        Format::Json => render(&serde_json::to_value(&summary).expect("summary serializes")),
        Format::Csv => {
            let div = summary
                .first_divergence
                .as_ref()
                .map_or(String::new(), |d| d.trial.to_string());
            format!(
                "trials,agreements,cutoffs,cutoff_agreements,seed,horizon,coeff_range,first_divergence_trial\n{},{},{},{},{},{},{},{div}\n",
                summary.trials,
                summary.agreements,
                summary.cutoffs,
                summary.cutoff_agreements,
                summary.seed,
                summary.horizon,
                summary.coeff_range
            )
        }
    };
    let code = if summary.all_agree() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Outcome::new(code, out)
}

fn tetranacci(init: &InitialState, horizon: usize, format: Format) -> Outcome {
    let report = tetranacci_report(init, horizon);
    let t = report.fundamental.clone().unwrap_or_default();
    trajectory_output(
        &Params::tetranacci(),
        init,
        &report,
        format,
        vec![("tetranacci", qs(&t))],
    )
}

/// Executes a parsed command. Errors are invalid parameters or initial
/// values and numerical failures.
pub fn run(cli: &Cli) -> Result<Outcome, SolverError> {
    match &cli.command {
        Command::Roots { params, tolerance, format } => roots(&params.params()?, *tolerance, *format),
        Command::Seq { params, n, r_init, s_init, format } => {
            let rs = r_init.clone().zip(s_init.clone());
            Ok(seq(&params.params()?, *n, rs, *format))
        }
        Command::Binet { params, n, tolerance, format } => {
            binet(&params.params()?, *n, *tolerance, *format)
        }
        Command::Solve { params, init, horizon, format } => {
            Ok(solve(&params.params()?, &init.init()?, *horizon, *format))
        }
        Command::Forbidden { params, init, n, format } => {
            Ok(forbidden(&params.params()?, &init.init()?, *n, *format))
        }
        Command::Verify { trials, seed, horizon, coeff_range, format } => {
            let config = CampaignConfig {
                trials: *trials,
                seed: *seed,
                horizon: *horizon,
                coeff_range: *coeff_range,
            };
            Ok(verify(config, *format))
        }
        Command::Tetranacci { init, horizon, format } => {
            Ok(tetranacci(&init.init()?, *horizon, *format))
        }
    }
}

/// Parses `args` (program name first), runs the command, writes its output
/// and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

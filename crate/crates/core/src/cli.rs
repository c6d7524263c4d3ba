//! Command-line interface of the `volconj` binary.
//!
//! Exit codes: 0 on success, 1 on invalid input or usage, 2 on numerical
//! failure (including a check whose criterion is not met).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    self, default_schedule, gukov_check, h_closed, h_numeric_with, mm_check, schlafli_residual, shared_root_check,
    FactorRef, GeometryPoint,
};
use crate::jones::{self, PhaseBranch};
use crate::knots::KnotSpec;
use crate::numerics::LimitEstimate;
use crate::sweep::{self, Grid, NSchedule, SweepJob, SweepMode, TOL_ERR_EST};

/// Parses `re+imi`, `re-imi`, a plain real, or a plain imaginary `imi`.
/// Exponents (`1e-3+2E+1i`) are accepted.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Validation(format!("{s:?}: expected a complex number like 1.5-0.2i"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let real = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(t),
    };
    let z = match split {
        Some(k) => Complex64::new(real(&body[..k])?, imag(&body[k..])?),
        None => Complex64::new(0.0, imag(body)?),
    };
    Ok(z)
}

fn complex_arg(s: &str) -> std::result::Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn knot_arg(s: &str) -> std::result::Result<KnotSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `re_min:re_max:im_min:im_max`.
fn grid_arg(s: &str) -> std::result::Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || format!("{s:?}: expected re_min:re_max:im_min:im_max");
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut out = [0.0; 4];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

/// `RExI`, e.g. `20x20`.
fn steps_arg(s: &str) -> std::result::Result<(u32, u32), String> {
    let bad = || format!("{s:?}: expected steps like 20x20");
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Continued,
    Principal,
}

impl From<BranchArg> for PhaseBranch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Continued => PhaseBranch::Continued,
            BranchArg::Principal => PhaseBranch::Principal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    ClosedForm,
    NumericLimit,
    Both,
}

impl From<ModeArg> for SweepMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::ClosedForm => SweepMode::ClosedForm,
            ModeArg::NumericLimit => SweepMode::NumericLimit,
            ModeArg::Both => SweepMode::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "volconj", version, about = "Numerical workbench for the parameterized volume conjecture")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Tolerance for the command's check (each command has its own default).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct KnotArg {
    /// `unknot`, `fig8` or `torus:A,B`.
    #[arg(long, value_parser = knot_arg)]
    knot: KnotSpec,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate J_N(K;q).
    Jones {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        q: Complex64,
    },
    /// Extrapolate H(K;u) from log J_N and compare with the closed form.
    Limit {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long, default_value_t = 2000)]
        nmax: u32,
        /// Number of N values in the schedule.
        #[arg(long, default_value_t = 20)]
        points: u32,
        #[arg(long, value_enum, default_value = "continued")]
        branch: BranchArg,
    },
    /// H, v, volume, geodesic length and surgery coefficients at one u.
    Geometry {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long, value_enum, default_value = "closed-form")]
        mode: ModeArg,
        #[arg(long, default_value_t = 2000)]
        nmax: u32,
    },
    /// Schläfli residual along the line u(t) = u0 + t dir.
    Schlafli {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true, default_value = "0")]
        u0: Complex64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        dir: Complex64,
        /// Parameter values to test.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.5")]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
    },
    /// Evaluate the A-polynomial factors at (-e^{-v/2}, e^{u/2}) and (-e^{v/2}, e^{u/2}).
    Gukov {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        u: Complex64,
    },
    /// Shared roots of H and the Alexander polynomial.
    Roots {
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Compare J_N(K; e^{(u+2 pi i)/N}) with 1/Delta(K; e^{u+2 pi i}).
    MmCheck {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long, default_value_t = 2000)]
        n: u32,
    },
    /// Evaluate a grid of u values.
    Sweep {
        #[command(flatten)]
        knot: KnotArg,
        /// `re_min:re_max:im_min:im_max`.
        #[arg(long, value_parser = grid_arg, allow_hyphen_values = true)]
        grid: [f64; 4],
        /// `RExI`, e.g. `20x20`.
        #[arg(long, value_parser = steps_arg, default_value = "10x10")]
        steps: (u32, u32),
        #[arg(long, value_enum, default_value = "closed-form")]
        mode: ModeArg,
        #[arg(long, default_value_t = 200)]
        nmin: u32,
        #[arg(long, default_value_t = 2000)]
        nmax: u32,
        #[arg(long, default_value_t = 200)]
        nstep: u32,
    },
}

/// Rendered command output plus whether its check passed.
struct Output {
    text: String,
    passed: bool,
    /// Lines for stderr.
    diagnostics: String,
}

fn render<S: Serialize>(format: Format, report: &S, csv: String, passed: bool) -> Result<Output> {
    let text = match format {
        Format::Csv => csv,
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
    };
    Ok(Output {
        text,
        passed,
        diagnostics: String::new(),
    })
}

fn table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JonesReport {
    #[serde(flatten)]
    evaluation: jones::JonesEvaluation,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct LimitReport {
    knot: KnotSpec,
    u: Complex64,
    branch: PhaseBranch,
    estimate: LimitEstimate,
    closed_form: Option<Complex64>,
    difference: Option<f64>,
}

#[derive(Serialize)]
struct SchlafliPoint {
    t: f64,
    u: Complex64,
    residual: f64,
    passed: bool,
}

#[derive(Serialize)]
struct SchlafliReport {
    knot: KnotSpec,
    u0: Complex64,
    dir: Complex64,
    dt: f64,
    tol: f64,
    points: Vec<SchlafliPoint>,
}

fn execute(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    match &cli.command {
        Command::Jones { knot, n, q } => {
            let evaluation = jones::evaluate(knot.knot, *n, *q)?;
            let z = evaluation.value.to_complex();
            let csv = table(
                "knot,n,q_re,q_im,J_re,J_im,log_mag,phase",
                [format!(
                    "{},{},{},{},{},{},{},{}",
                    knot.knot, n, q.re, q.im, z.re, z.im, evaluation.value.log_mag, evaluation.value.phase
                )],
            );
            render(format, &JonesReport { evaluation, re: z.re, im: z.im }, csv, true)
        }
        Command::Limit {
            knot,
            u,
            nmax,
            points,
            branch,
        } => {
            let schedule = default_schedule(*nmax, *points);
            let estimate = h_numeric_with(knot.knot, *u, &schedule, (*branch).into())?;
            let closed_form = h_closed(knot.knot, *u).ok();
            let difference = closed_form.map(|c| (c - estimate.value).norm());
            let tol = cli.tol.unwrap_or(1e-3);
            let passed = difference.is_none_or(|d| d <= tol);
            let csv = table(
                "knot,u_re,u_im,H_re,H_im,err_est,closed_re,closed_im,difference",
                [format!(
                    "{},{},{},{},{},{},{},{},{}",
                    knot.knot,
                    u.re,
                    u.im,
                    estimate.value.re,
                    estimate.value.im,
                    estimate.error_estimate,
                    opt(closed_form.map(|c| c.re)),
                    opt(closed_form.map(|c| c.im)),
                    opt(difference),
                )],
            );
            let report = LimitReport {
                knot: knot.knot,
                u: *u,
                branch: (*branch).into(),
                estimate,
                closed_form,
                difference,
            };
            render(format, &report, csv, passed)
        }
        Command::Geometry { knot, u, mode, nmax } => {
            let schedule = default_schedule(*nmax, 20);
            let points = match SweepMode::from(*mode) {
                SweepMode::ClosedForm => vec![GeometryPoint::closed_form(knot.knot, *u)?],
                SweepMode::NumericLimit => vec![GeometryPoint::numeric(knot.knot, *u, &schedule)?],
                SweepMode::Both => vec![
                    GeometryPoint::closed_form(knot.knot, *u)?,
                    GeometryPoint::numeric(knot.knot, *u, &schedule)?,
                ],
            };
            let csv = table(sweep::CSV_HEADER, points.iter().map(|p| sweep::csv_row(0, p)));
            render(format, &points, csv, true)
        }
        Command::Schlafli {
            knot,
            u0,
            dir,
            t,
            dt,
        } => {
            let tol = cli.tol.unwrap_or(1e-4);
            let path = |s: f64| *u0 + *dir * s;
            let mut points = Vec::new();
            for &ti in t {
                let residual = schlafli_residual(knot.knot, path, ti, *dt)?;
                points.push(SchlafliPoint {
                    t: ti,
                    u: path(ti),
                    residual,
                    passed: residual <= tol,
                });
            }
            let passed = points.iter().all(|p| p.passed);
            let csv = table(
                "t,u_re,u_im,residual,passed",
                points
                    .iter()
                    .map(|p| format!("{},{},{},{},{}", p.t, p.u.re, p.u.im, p.residual, p.passed)),
            );
            let report = SchlafliReport {
                knot: knot.knot,
                u0: *u0,
                dir: *dir,
                dt: *dt,
                tol,
                points,
            };
            render(format, &report, csv, passed)
        }
        Command::Gukov { knot, u } => {
            let tol = cli.tol.unwrap_or(1e-6);
            let report = gukov_check(knot.knot, *u, tol)?;
            let passed = !report.vanishing_candidates().is_empty();
            let csv = table(
                "factor,convention,pair,L_re,L_im,M_re,M_im,residual,relative_residual,vanishes",
                report.entries.iter().map(|e| {
                    let factor = match e.factor {
                        FactorRef::Abelian => "abelian".to_string(),
                        FactorRef::Candidate(i) => format!("candidate{i}"),
                    };
                    let convention = e
                        .convention
                        .and_then(|c| serde_json::to_value(c).ok())
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default();
                    let pair = match e.pair {
                        geometry::GukovPair::MinusHalfV => "minus_half_v",
                        geometry::GukovPair::PlusHalfV => "plus_half_v",
                    };
                    format!(
                        "{factor},{convention},{pair},{},{},{},{},{},{},{}",
                        e.l.re, e.l.im, e.m.re, e.m.im, e.residual, e.relative_residual, e.vanishes
                    )
                }),
            );
            render(format, &report, csv, passed)
        }
        Command::Roots { knot } => {
            let tol = cli.tol.unwrap_or(1e-10);
            let report = shared_root_check(knot.knot, tol)?;
            let csv = table(
                "root_re,root_im,iterations,abs_H,abs_alexander,passed",
                report.roots.iter().map(|r| {
                    format!(
                        "{},{},{},{},{},{}",
                        r.root.re, r.root.im, r.iterations, r.h_at_root, r.alexander_at_exp_root, r.passed
                    )
                }),
            );
            render(format, &report, csv, report.passed())
        }
        Command::MmCheck { knot, u, n } => {
            let tol = cli.tol.unwrap_or(1e-2);
            let report = mm_check(knot.knot, *u, *n, tol)?;
            let mut line = String::new();
            let _ = write!(
                line,
                "{},{},{},{},{},{},{},{},{},{}",
                knot.knot,
                u.re,
                u.im,
                n,
                report.jones.re,
                report.jones.im,
                report.target.re,
                report.target.im,
                report.deviation,
                report.passed
            );
            let csv = table("knot,u_re,u_im,n,J_re,J_im,target_re,target_im,deviation,passed", [line]);
            render(format, &report, csv, report.passed)
        }
        Command::Sweep {
            knot,
            grid,
            steps,
            mode,
            nmin,
            nmax,
            nstep,
        } => {
            let mut tolerances = BTreeMap::new();
            if let Some(t) = cli.tol {
                tolerances.insert(TOL_ERR_EST.to_string(), t);
            }
            let job = SweepJob {
                knot: knot.knot,
                grid: Grid {
                    re_min: grid[0],
                    re_max: grid[1],
                    im_min: grid[2],
                    im_max: grid[3],
                    steps_re: steps.0,
                    steps_im: steps.1,
                },
                n_schedule: NSchedule {
                    n_min: *nmin,
                    n_max: *nmax,
                    n_step: *nstep,
                },
                mode: (*mode).into(),
                tolerances,
            };
            let result = sweep::run_sweep(&job, threads(cli.threads))?;
            let mut diagnostics = String::new();
            for f in &result.failures {
                let _ = writeln!(diagnostics, "point {} (u = {}): {}", f.idx, f.u, f.diagnostic);
            }
            let text = match format {
                Format::Csv => result.to_csv(),
                Format::Json => result.to_json()? + "\n",
            };
            Ok(Output {
                text,
                passed: true,
                diagnostics,
            })
        }
    }
}

fn threads(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_validation() || matches!(e, Error::Io(_)) {
        1
    } else {
        2
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Output goes to `stdout` unless `--out` is given.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let mut text = e.render().to_string();
            return if e.use_stderr() {
                if !text.contains("Usage:") {
                    let _ = write!(text, "\n{}\n", Cli::command().render_usage());
                }
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads(cli.threads)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: thread pool: {e}");
            return 2;
        }
    };
    let result = pool.install(|| execute(&cli)).and_then(|out| {
        stderr.write_all(out.diagnostics.as_bytes())?;
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text)?,
            None => stdout.write_all(out.text.as_bytes())?,
        }
        Ok(out.passed)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(stderr, "check failed");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

//! Command-line front end for the `hopf-cone` kernel.
//!
//! [`run`] does all the work and returns the exit code together with what
//! should go to stdout and stderr, so the binary stays a thin shell and
//! tests can drive the commands in-process.

pub mod format;
pub mod verify;

use std::f64::consts::{PI, TAU};
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopf_cone::holonomy::{build_h3, build_h4, HolonomyRep};
use hopf_cone::hopf::{fibre_over, BasePoint};
use hopf_cone::invariants::{flexibility_sweep, schlafli_volume, SchlafliTarget, SweepRow};
use hopf_cone::report::{h3_report, h4_report, GeometryReport};
use hopf_cone::spherical_trig::{residuals_h3, solve_triangle, symmetric_tau, TriangleSolution};
use hopf_cone::GeometryError;
use serde::Serialize;

use format::{g17, json, Csv};
use verify::{run_verify, VerifyConfig, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hopf-cone",
    version,
    about = "Spherical cone-manifolds over Hopf links"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the base triangle of H3(α, β, γ) and print the residuals.
    Triangle(TriangleArgs),
    /// Full report for H3(α, β, γ).
    H3(H3Args),
    /// Full report for H4(α; τ); τ defaults to the symmetric point.
    H4(H4Args),
    /// Deformation sweep of H4(α; τ) over the admissible τ interval.
    Sweep(SweepArgs),
    /// Randomized invariant suites.
    Verify(VerifyArgs),
    /// Sample points on Hopf fibres.
    Fibres(FibresArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Angles are given in degrees instead of radians.
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TriangleArgs {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct H3Args {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Simpson steps for the Schläfli volume (even).
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct H4Args {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Number of interior τ values (at least 3).
    #[arg(long, default_value_t = 9)]
    pub samples: usize,
    /// Rows with a larger relation residual fail the sweep.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random cases per suite.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Tolerance for the holonomy suites.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Perturb the named suite so that it must fail.
    #[arg(long, value_name = "SUITE")]
    pub inject_fault: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    H3,
    H4,
}

#[derive(Args, Debug)]
pub struct FibresArgs {
    /// Base point in Cartesian coordinates, `a,b,c` (normalised).
    #[arg(long, value_name = "A,B,C", allow_hyphen_values = true)]
    pub base: Vec<String>,
    /// Base point in polar coordinates, `psi,theta`.
    #[arg(long, value_name = "PSI,THETA", allow_hyphen_values = true)]
    pub polar: Vec<String>,
    /// Add the singular fibres of a link, taking its angles from
    /// `--alpha/--beta/--gamma` or `--alpha/--tau`.
    #[arg(long, value_enum)]
    pub link: Option<Link>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Points per fibre.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Append stereographic coordinates projected from (0, 1, 0, 0).
    #[arg(long)]
    pub stereographic: bool,
    #[command(flatten)]
    pub output: Output,
}

/// Parse a real number, optionally a multiple of π: `2.5`, `pi`, `-pi/2`,
/// `3pi/2`, `1.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(['*', ' '], "");
    if let Ok(v) = t.parse::<f64>() {
        return check_finite(v, s);
    }
    let Some(idx) = t.find("pi") else {
        return Err(format!("not a number: {s:?}"));
    };
    let (coef, rest) = (&t[..idx], &t[idx + 2..]);
    let c = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => coef
            .parse::<f64>()
            .map_err(|_| format!("not a number: {s:?}"))?,
    };
    let d = match rest {
        "" => 1.0,
        _ => rest
            .strip_prefix('/')
            .and_then(|x| x.parse::<f64>().ok())
            .ok_or_else(|| format!("not a number: {s:?}"))?,
    };
    check_finite(c * PI / d, s)
}

fn check_finite(v: f64, s: &str) -> Result<f64, String> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}

fn parse_tuple<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated values, got {s:?}"));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_angle(p)?;
    }
    Ok(out)
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Usage(String),
    Geometry(GeometryError),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Geometry(e)
    }
}

/// Text to emit plus whether the command's own checks passed.
struct Produced {
    text: String,
    passed: bool,
}

fn to_rad(degrees: bool, x: f64) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                // --help and --version
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let output = match &cli.command {
        Command::Triangle(a) => a.output.clone(),
        Command::H3(a) => a.output.clone(),
        Command::H4(a) => a.output.clone(),
        Command::Sweep(a) => a.output.clone(),
        Command::Verify(a) => a.output.clone(),
        Command::Fibres(a) => a.output.clone(),
    };
    let produced = match dispatch(&cli.command) {
        Ok(p) => p,
        Err(Failure::Usage(m)) => return Outcome::fail(EXIT_USAGE, format!("error: {m}")),
        Err(Failure::Geometry(e)) => {
            let code = match e {
                GeometryError::InvalidArgument(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            };
            return Outcome::fail(code, format!("error: {e}"));
        }
    };
    let code = if produced.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY
    };
    match &output.out {
        Some(path) => match std::fs::write(path, &produced.text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::fail(
                EXIT_USAGE,
                format!("error: cannot write {}: {e}", path.display()),
            ),
        },
        None => Outcome {
            code,
            stdout: produced.text,
            stderr: String::new(),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Produced, Failure> {
    match cmd {
        Command::Triangle(a) => cmd_triangle(a),
        Command::H3(a) => cmd_h3(a),
        Command::H4(a) => cmd_h4(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Fibres(a) => cmd_fibres(a),
    }
}

#[derive(Serialize)]
struct TriangleOut {
    solution: TriangleSolution,
    residuals: [f64; 5],
}

fn cmd_triangle(a: &TriangleArgs) -> Result<Produced, Failure> {
    let d = a.output.degrees;
    let (al, be, ga) = (to_rad(d, a.alpha), to_rad(d, a.beta), to_rad(d, a.gamma));
    let t = solve_triangle(al, be, ga)?;
    let r = residuals_h3(al, be, ga, t.phi, t.psi, t.theta);
    let text = match a.output.format {
        Format::Json => json(
            "triangle",
            &TriangleOut {
                solution: t,
                residuals: r,
            },
        ),
        Format::Csv => {
            let mut c = Csv::new(&[
                "alpha", "beta", "gamma", "phi", "psi", "theta", "r1", "r2", "r3", "r4", "r5",
            ]);
            c.floats(&[
                t.alpha, t.beta, t.gamma, t.phi, t.psi, t.theta, r[0], r[1], r[2], r[3], r[4],
            ]);
            c.finish()
        }
    };
    Ok(Produced { text, passed: true })
}

#[derive(Serialize)]
struct ReportOut {
    report: GeometryReport,
    schlafli_steps: usize,
    schlafli_volume: f64,
}

fn report_csv(r: &ReportOut) -> String {
    let g = &r.report;
    let mut c = Csv::new(&["quantity", "value"]);
    let mut put = |k: &str, v: f64| c.row(&[k.to_string(), g17(v)]);
    for (i, a) in g.cone_angles.iter().enumerate() {
        put(&format!("cone_angle_{i}"), *a);
    }
    if let Some(t) = g.tau {
        put("tau", t);
    }
    for (i, l) in g.lengths.iter().enumerate() {
        put(&format!("length_{i}"), *l);
    }
    put("length_from_holonomy", g.length_from_holonomy);
    put("length_from_holonomy_folded", g.length_from_holonomy_folded);
    put("volume", g.volume);
    put("schlafli_volume", r.schlafli_volume);
    put("holonomy_residual", g.holonomy_residual);
    put("central_commutator", g.central_commutator);
    put("trace_left", g.central_traces.left);
    put("trace_left_expected", g.central_traces.left_expected);
    put("trace_right", g.central_traces.right);
    put("trace_right_expected", g.central_traces.right_expected);
    for p in &g.perpendiculars {
        put(&format!("perpendicular_{}_{}", p.i, p.j), p.length);
    }
    c.finish()
}

fn emit_report(command: &str, format: Format, out: ReportOut) -> Produced {
    let text = match format {
        Format::Json => json(command, &out),
        Format::Csv => report_csv(&out),
    };
    Produced { text, passed: true }
}

fn cmd_h3(a: &H3Args) -> Result<Produced, Failure> {
    let d = a.output.degrees;
    let (al, be, ga) = (to_rad(d, a.alpha), to_rad(d, a.beta), to_rad(d, a.gamma));
    let report = h3_report(al, be, ga)?;
    let v = schlafli_volume(
        &SchlafliTarget::H3 {
            alpha: al,
            beta: be,
            gamma: ga,
        },
        a.steps,
    )?;
    Ok(emit_report(
        "h3",
        a.output.format,
        ReportOut {
            report,
            schlafli_steps: a.steps,
            schlafli_volume: v,
        },
    ))
}

fn cmd_h4(a: &H4Args) -> Result<Produced, Failure> {
    let d = a.output.degrees;
    let al = to_rad(d, a.alpha);
    let tau = a.tau.map(|t| to_rad(d, t));
    let report = h4_report(al, tau)?;
    let tau = report.tau.expect("H4 reports carry τ");
    let v = schlafli_volume(&SchlafliTarget::H4 { alpha: al, tau }, a.steps)?;
    Ok(emit_report(
        "h4",
        a.output.format,
        ReportOut {
            report,
            schlafli_steps: a.steps,
            schlafli_volume: v,
        },
    ))
}

pub const SWEEP_HEADER: &[&str] = &[
    "tau",
    "ell2",
    "psi",
    "phi",
    "b1",
    "b2",
    "residual",
    "delta_h",
    "delta_h_folded",
    "perpendicular_gap",
    "near_degenerate",
];

#[derive(Serialize)]
struct SweepOut {
    alpha: f64,
    symmetric_tau: f64,
    rows: Vec<SweepRow>,
}

fn cmd_sweep(a: &SweepArgs) -> Result<Produced, Failure> {
    if a.samples < 3 {
        return Err(Failure::Usage(format!(
            "--samples must be at least 3, got {}",
            a.samples
        )));
    }
    let al = to_rad(a.output.degrees, a.alpha);
    let rows = flexibility_sweep(al, a.samples)?;
    let passed = rows.iter().all(|r| r.residual <= a.tol);
    let text = match a.output.format {
        Format::Json => json(
            "sweep",
            &SweepOut {
                alpha: al,
                symmetric_tau: symmetric_tau(al)?,
                rows,
            },
        ),
        Format::Csv => {
            let mut c = Csv::new(SWEEP_HEADER);
            for r in &rows {
                let mut cells: Vec<String> = [
                    r.tau,
                    r.ell2,
                    r.psi,
                    r.phi,
                    r.b1,
                    r.b2,
                    r.residual,
                    r.delta_h,
                    r.delta_h_folded,
                    r.perpendicular_gap,
                ]
                .iter()
                .map(|v| g17(*v))
                .collect();
                cells.push(r.near_degenerate.to_string());
                c.row(&cells);
            }
            c.finish()
        }
    };
    Ok(Produced { text, passed })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Produced, Failure> {
    if let Some(f) = &a.inject_fault {
        if !SUITES.contains(&f.as_str()) {
            return Err(Failure::Usage(format!(
                "unknown suite {f:?}; expected one of {}",
                SUITES.join(", ")
            )));
        }
    }
    let report = run_verify(&VerifyConfig {
        seed: a.seed,
        samples: a.samples,
        steps: a.steps,
        tol: a.tol,
        fault: a.inject_fault.clone(),
    })?;
    let text = match a.output.format {
        Format::Json => json("verify", &report),
        Format::Csv => {
            let mut c = Csv::new(&["suite", "checks", "max_error", "tolerance", "passed"]);
            for s in &report.suites {
                c.row(&[
                    s.name.to_string(),
                    s.checks.to_string(),
                    g17(s.max_error),
                    g17(s.tolerance),
                    s.passed.to_string(),
                ]);
            }
            c.finish()
        }
    };
    Ok(Produced {
        text,
        passed: report.passed,
    })
}

#[derive(Serialize)]
struct Fibre {
    base: BasePoint,
    points: Vec<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stereographic: Option<Vec<[f64; 3]>>,
}

/// Projection from `(0, 1, 0, 0)` onto the `(w, y, z)` space. The pole
/// itself goes to infinity.
pub fn stereographic(p: &[f64; 4]) -> [f64; 3] {
    let d = 1.0 - p[1];
    if d < 1e-12 {
        return [f64::INFINITY; 3];
    }
    [p[0] / d, p[2] / d, p[3] / d]
}

fn link_bases(rep: &HolonomyRep) -> Vec<BasePoint> {
    rep.axes.iter().map(|a| a.base()).collect()
}

fn cmd_fibres(a: &FibresArgs) -> Result<Produced, Failure> {
    let d = a.output.degrees;
    let mut bases = Vec::new();
    for s in &a.base {
        let [x, y, z] = parse_tuple::<3>(s).map_err(Failure::Usage)?;
        bases.push(BasePoint::from_cartesian(x, y, z).map_err(|e| Failure::Usage(e.to_string()))?);
    }
    for s in &a.polar {
        let [psi, theta] = parse_tuple::<2>(s).map_err(Failure::Usage)?;
        bases.push(BasePoint::from_polar(to_rad(d, psi), to_rad(d, theta)));
    }
    match a.link {
        Some(Link::H3) => {
            let (Some(al), Some(be), Some(ga)) = (a.alpha, a.beta, a.gamma) else {
                return Err(Failure::Usage(
                    "--link h3 needs --alpha, --beta and --gamma".into(),
                ));
            };
            bases.extend(link_bases(&build_h3(
                to_rad(d, al),
                to_rad(d, be),
                to_rad(d, ga),
            )?));
        }
        Some(Link::H4) => {
            let Some(al) = a.alpha else {
                return Err(Failure::Usage("--link h4 needs --alpha".into()));
            };
            let al = to_rad(d, al);
            let tau = match a.tau {
                Some(t) => to_rad(d, t),
                None => symmetric_tau(al)?,
            };
            bases.extend(link_bases(&build_h4(al, tau)?));
        }
        None => {}
    }
    if bases.is_empty() {
        return Err(Failure::Usage(
            "no base points given (use --base, --polar or --link)".into(),
        ));
    }
    if a.samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let ts: Vec<f64> = (0..a.samples)
        .map(|k| TAU * k as f64 / a.samples as f64)
        .collect();
    let fibres: Vec<Fibre> = bases
        .iter()
        .map(|b| {
            let c = fibre_over(b);
            let points: Vec<[f64; 4]> = ts.iter().map(|&t| c.point(t).as_array()).collect();
            let stereographic = a
                .stereographic
                .then(|| points.iter().map(stereographic).collect());
            Fibre {
                base: *b,
                points,
                stereographic,
            }
        })
        .collect();
    let text = match a.output.format {
        Format::Json => json("fibres", &fibres),
        Format::Csv => {
            let mut header = vec!["fibre", "t", "w", "x", "y", "z"];
            if a.stereographic {
                header.extend(["sx", "sy", "sz"]);
            }
            let mut c = Csv::new(&header);
            for (i, f) in fibres.iter().enumerate() {
                for (k, p) in f.points.iter().enumerate() {
                    let mut cells = vec![i.to_string(), g17(ts[k])];
                    cells.extend(p.iter().map(|v| g17(*v)));
                    if let Some(s) = &f.stereographic {
                        cells.extend(s[k].iter().map(|v| g17(*v)));
                    }
                    c.row(&cells);
                }
            }
            c.finish()
        }
    };
    Ok(Produced { text, passed: true })
}

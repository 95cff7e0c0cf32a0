mod output;

use std::f64::consts::PI;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use output::{FourierReport, OutputRecord};
use sphere_green::applications::{fourier_g2, FourierInputs};
use sphere_green::green::green_recurrence;
use sphere_green::reduce::{eval_series_oracle, ReducedForm};
use sphere_green::verify::{theta_grid, Suite};
use sphere_green::{classify, green, quad_green, reduce, HypParams, PolarAngle, QuadratureConfig, SphereGeometry};

/// Inputs this far above π are taken to mean π (a rounded decimal of π).
const PI_SNAP: f64 = 1e-9;

/// Relative agreement required by `reduce --z`.
const REDUCE_CHECK_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "sphere-green", version, about = "Green's function of the Laplacian on the n-sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate G_n(θ) at one angle.
    Eval {
        #[command(flatten)]
        sphere: Sphere,
        /// Geodesic angle from the source.
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate G_n on an evenly spaced grid of angles.
    Table {
        #[command(flatten)]
        sphere: Sphere,
        #[arg(long, allow_negative_numbers = true)]
        theta_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite and print a per-check table.
    Verify {
        /// oracle, pde, asymptotic, cohl, fourier, reduce or all.
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Azimuthal Fourier expansion of 2πG₂ between two points of S².
    Fourier {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta_prime: f64,
        #[arg(long, allow_negative_numbers = true)]
        delta_phi: f64,
        #[arg(long, default_value_t = 10_000)]
        max_terms: u32,
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_enum, default_value_t = FourierFormat::Text)]
        format: FourierFormat,
    },
    /// Reduce ₂F₁(a, b; c; z) to its closed form.
    Reduce {
        /// Integer or half-integer, e.g. 3, -2, 3/2, -0.5.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Also evaluate at z and compare with the power series.
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct Sphere {
    /// Dimension of the sphere (n ≥ 2).
    #[arg(long)]
    n: u32,
    /// Radius.
    #[arg(long = "R", short = 'R', default_value_t = 1.0, allow_negative_numbers = true)]
    radius: f64,
}

#[derive(clap::Args)]
struct Common {
    /// Angles are given in degrees.
    #[arg(long)]
    degrees: bool,
    /// Relative tolerance of the quadrature method.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Closed,
    Recurrence,
    Quadrature,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FourierFormat {
    Text,
    Csv,
    Json,
}

/// Failures mapped to exit codes: 1 for failed checks, 2 for bad input.
enum Failure {
    Check(anyhow::Error),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<sphere_green::Error> for Failure {
    fn from(e: sphere_green::Error) -> Self {
        Failure::Input(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { sphere, theta, method, common } => cmd_eval(&sphere, theta, method, &common),
        Command::Table { sphere, theta_min, theta_max, points, method, common } => {
            cmd_table(&sphere, theta_min, theta_max, points, method, &common)
        }
        Command::Verify { suite } => cmd_verify(&suite),
        Command::Fourier { theta, theta_prime, delta_phi, max_terms, degrees, format } => {
            cmd_fourier(theta, theta_prime, delta_phi, max_terms, degrees, format)
        }
        Command::Reduce { a, b, c, z, json } => cmd_reduce(&a, &b, &c, z, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) if closed_pipe(&e) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// A reader such as `head` closed stdout early; not an error.
fn closed_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn to_radians(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

/// Validates θ, snapping values within `PI_SNAP` above π to π.
fn polar_angle(theta: f64) -> Result<PolarAngle> {
    let theta = if theta > PI && theta <= PI + PI_SNAP { PI } else { theta };
    PolarAngle::new(theta).with_context(|| format!("theta must lie in (0, π], got {theta}"))
}

fn geometry(s: &Sphere) -> Result<SphereGeometry> {
    SphereGeometry::new(s.n, s.radius).with_context(|| format!("invalid sphere n = {}, R = {}", s.n, s.radius))
}

fn evaluate(geom: &SphereGeometry, theta: PolarAngle, method: MethodArg, tol: f64) -> Result<OutputRecord> {
    let (value, method, error_estimate) = match method {
        MethodArg::Auto | MethodArg::Closed => {
            let g = green(geom, theta);
            (g.value, g.method.as_str(), None)
        }
        MethodArg::Recurrence => {
            let g = green_recurrence(geom, theta);
            (g.value, g.method.as_str(), None)
        }
        MethodArg::Quadrature => {
            let cfg = QuadratureConfig::with_rel_tol(tol).context("invalid --tol")?;
            let q = quad_green(geom, theta, &cfg)?;
            (q.value, "quadrature", Some(q.error_estimate))
        }
    };
    Ok(OutputRecord {
        n: geom.n(),
        radius: geom.radius(),
        theta: theta.theta(),
        value,
        method: method.to_string(),
        error_estimate,
    })
}

fn emit(records: &[OutputRecord], format: Format) -> Result<()> {
    let out = io::stdout().lock();
    match format {
        Format::Csv => output::write_csv(out, records),
        Format::Json => output::write_json(out, records),
    }
}

fn cmd_eval(sphere: &Sphere, theta: f64, method: MethodArg, common: &Common) -> Result<(), Failure> {
    let geom = geometry(sphere)?;
    let theta = polar_angle(to_radians(theta, common.degrees))?;
    let record = evaluate(&geom, theta, method, common.tol)?;
    emit(&[record], common.format)?;
    Ok(())
}

fn cmd_table(
    sphere: &Sphere,
    theta_min: f64,
    theta_max: f64,
    points: usize,
    method: MethodArg,
    common: &Common,
) -> Result<(), Failure> {
    let geom = geometry(sphere)?;
    let (lo, hi) = (to_radians(theta_min, common.degrees), to_radians(theta_max, common.degrees));
    let hi = if hi > PI && hi <= PI + PI_SNAP { PI } else { hi };
    if !(lo > 0.0 && lo < hi && hi <= PI) {
        return Err(anyhow!("need 0 < theta_min < theta_max <= π, got [{lo}, {hi}]").into());
    }
    if points < 2 {
        return Err(anyhow!("need at least 2 points, got {points}").into());
    }
    let records = theta_grid(lo, hi, points)
        .into_iter()
        .map(|t| evaluate(&geom, polar_angle(t)?, method, common.tol))
        .collect::<Result<Vec<_>>>()?;
    emit(&records, common.format)?;
    Ok(())
}

fn cmd_verify(suite: &str) -> Result<(), Failure> {
    let suites = Suite::parse_many(suite)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{:<6} {:<11} {:<52} {:>11} {:>9} {:>8}", "status", "suite", "check", "max error", "tolerance", "samples")?;
    let mut failed = Vec::new();
    for suite in suites {
        for check in suite.run() {
            writeln!(
                out,
                "{:<6} {:<11} {:<52} {:>11.3e} {:>9.1e} {:>8}",
                if check.passed() { "PASS" } else { "FAIL" },
                suite.name(),
                check.label(),
                check.max_error,
                check.tolerance,
                check.samples
            )?;
            if !check.passed() {
                for f in &check.failures {
                    writeln!(out, "       {f}")?;
                }
                failed.push(check.label());
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(anyhow!("{} check(s) failed: {}", failed.len(), failed.join(", "))))
    }
}

fn cmd_fourier(
    theta: f64,
    theta_prime: f64,
    delta_phi: f64,
    max_terms: u32,
    degrees: bool,
    format: FourierFormat,
) -> Result<(), Failure> {
    let [t, tp, dphi] = [theta, theta_prime, delta_phi].map(|x| to_radians(x, degrees));
    let inputs = FourierInputs::new(t, tp, dphi, max_terms)?;
    let expansion = fourier_g2(&inputs)?;
    let hav = (0.5 * (t - tp)).sin().powi(2) + t.sin() * tp.sin() * (0.5 * dphi).sin().powi(2);
    let distance = 2.0 * hav.sqrt().min(1.0).asin();
    let record = OutputRecord {
        n: 2,
        radius: 1.0,
        theta: distance,
        value: expansion.green(),
        method: "fourier".into(),
        error_estimate: Some(expansion.tail_bound / (2.0 * PI)),
    };
    let report = FourierReport { record, expansion };
    let out = io::stdout().lock();
    match format {
        FourierFormat::Text => report.write_text(out)?,
        FourierFormat::Csv => report.write_csv(out)?,
        FourierFormat::Json => report.write_json(out)?,
    }
    Ok(())
}

fn cmd_reduce(a: &str, b: &str, c: &str, z: Option<f64>, json: bool) -> Result<(), Failure> {
    let params = HypParams::parse(a, b, c)?;
    let case = classify(&params);
    let form: ReducedForm = reduce(&params)?;
    let check = match z {
        None => None,
        Some(z) => {
            if !(0.0..1.0).contains(&z) {
                return Err(anyhow!("z must lie in [0, 1), got {z}").into());
            }
            let reduced = form.eval(z)?;
            let series = eval_series_oracle(&params, z)?;
            let err = (reduced - series).abs() / series.abs().max(1.0);
            Some((z, reduced, series, err))
        }
    };
    let mut out = io::stdout().lock();
    if json {
        let mut doc = serde_json::json!({
            "a": params.a().to_string(),
            "b": params.b().to_string(),
            "c": params.c().to_string(),
            "case": case.number(),
            "form": form.to_string(),
            "uses_log_extension": form.uses_log_extension(),
        });
        if let Some((z, reduced, series, err)) = check {
            doc["check"] = serde_json::json!({ "z": z, "reduced": reduced, "series": series, "relative_error": err });
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(anyhow::Error::from)?)?;
    } else {
        writeln!(out, "{form}")?;
        if let Some((z, reduced, series, err)) = check {
            writeln!(
                out,
                "z = {z}: reduced = {}, series = {}, relative error = {err:.3e}",
                output::float17(reduced),
                output::float17(series)
            )?;
        }
    }
    if let Some((_, _, _, err)) = check {
        if !(err <= REDUCE_CHECK_TOL) {
            return Err(Failure::Check(anyhow!("reduced form disagrees with the series: relative error {err:.3e}")));
        }
    }
    Ok(())
}

//! Command-line interface for triangle capacity queries: locate least
//! capacity points, evaluate inner radii at chosen points, export
//! figure geometry as CSV or SVG, and check the build against its
//! reference-value table.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 best-effort
//! result that missed the requested tolerance, 3 verification failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tricap::capacity::{least_capacity_point, radius_at, Backend, CapacityReport};
use tricap::figures::{figure_geometry, FigureConfig, FigureGeometry};
use tricap::geometry::Triangle;
use tricap::maps::tri_30_60_90::kappa_30;
use tricap::{Complex64, Error};

const EXIT_USAGE: u8 = 1;
const EXIT_BEST_EFFORT: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tricap",
    version,
    about = "Inner radii and least capacity points of triangles",
    long_about = "Computes the conformal inner radius of a triangle at interior \
points, locates the least capacity point (the interior maximizer of the inner \
radius), exports the images of concentric circles and radial spokes under the \
disk map, and verifies the build against a table of reference values. Exact \
engines cover isosceles right and 30-60-90 triangles; a Schwarz-Christoffel \
engine covers every other shape."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate the least capacity point and report it as JSON
    Center(CenterArgs),
    /// Inner radius at a given interior point, as JSON
    Radius(RadiusArgs),
    /// Export circle and spoke images of the disk map as CSV or SVG
    Figure(FigureArgs),
    /// Run the reference-value table and print PASS/FAIL per row
    Verify(VerifyArgs),
}

/// Triangle selection shared by the geometric subcommands.
#[derive(Args)]
struct TriangleSpec {
    /// Vertices as three `x,y` pairs (either orientation)
    #[arg(
        value_name = "X,Y",
        num_args = 3,
        conflicts_with = "preset",
        required_unless_present = "preset"
    )]
    vertices: Vec<String>,

    /// Built-in triangle instead of explicit vertices
    #[arg(long, value_enum)]
    preset: Option<Preset>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Unit isosceles right triangle with vertices 0, 1, i
    IsoRight,
    /// 30-60-90 triangle with vertices 0, k, i*sqrt(3)*k for k =
    /// 2.6499581254...; published center coordinates (0.3599371272,
    /// 0.4062604057) are in units of k
    #[value(name = "30-60-90")]
    Tri306090,
    /// Scalene triangle with side lengths 6, 9, 13 and vertices 0, 6,
    /// (-13 + 4*sqrt(35)*i)/3
    #[value(name = "6-9-13")]
    Tri6913,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendFlag {
    /// Exact engine when the shape has one, numerical otherwise
    Auto,
    /// Exact sigma-function engine (isosceles right triangles only)
    Sigma,
    /// Exact Jacobi-elliptic engine (isosceles right triangles only)
    Jacobi,
    /// Numerical Schwarz-Christoffel engine (any triangle)
    Sc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Structured report (center and radius queries)
    Json,
    /// One sample point per line (figures)
    Csv,
    /// Standalone vector drawing (figures)
    Svg,
}

#[derive(Args)]
struct CenterArgs {
    #[command(flatten)]
    triangle: TriangleSpec,

    /// Engine to use
    #[arg(long, value_enum, default_value_t = BackendFlag::Auto)]
    backend: BackendFlag,

    /// Exit with status 2 if the achieved tolerance is worse than this
    #[arg(long, value_name = "EPS")]
    tol: Option<f64>,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    triangle: TriangleSpec,

    /// Interior query point as `x,y`
    #[arg(long, value_name = "X,Y", required = true)]
    at: String,

    /// Engine to use
    #[arg(long, value_enum, default_value_t = BackendFlag::Auto)]
    backend: BackendFlag,

    /// Exit with status 2 if the achieved tolerance is worse than this
    #[arg(long, value_name = "EPS")]
    tol: Option<f64>,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct FigureArgs {
    #[command(flatten)]
    triangle: TriangleSpec,

    /// Figure base point as `x,y`; defaults to the least capacity point
    #[arg(long, value_name = "X,Y")]
    at: Option<String>,

    /// Engine to use
    #[arg(long, value_enum, default_value_t = BackendFlag::Auto)]
    backend: BackendFlag,

    /// Number of concentric circles
    #[arg(long, value_name = "N", default_value_t = 10)]
    circles: usize,

    /// Number of radial spokes
    #[arg(long, value_name = "N", default_value_t = 24)]
    rays: usize,

    /// Write the geometry here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only rows whose id contains this substring
    #[arg(long, value_name = "SUBSTRING")]
    only: Option<String>,

    /// Raise every row's tolerance to at least this value
    #[arg(long, value_name = "EPS")]
    tol: Option<f64>,
}

/// Failed command: exit status plus the message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match err {
            Error::NoConvergence(_) => EXIT_BEST_EFFORT,
            _ => EXIT_USAGE,
        };
        Failure { code, message: err.to_string() }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Failure {
        Failure { code: EXIT_USAGE, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Failure {
        Failure { code: EXIT_USAGE, message: err.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests also land here; they are not
            // failures.
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Center(args) => cmd_center(args),
        Command::Radius(args) => cmd_radius(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("tricap: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

impl Preset {
    fn triangle(self) -> Triangle {
        let c = Complex64::new;
        let (a, b, d) = match self {
            Preset::IsoRight => (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)),
            Preset::Tri306090 => {
                let k = kappa_30();
                (c(0.0, 0.0), c(k, 0.0), c(0.0, 3f64.sqrt() * k))
            }
            Preset::Tri6913 => (
                c(0.0, 0.0),
                c(6.0, 0.0),
                c(-13.0 / 3.0, 4.0 * 35f64.sqrt() / 3.0),
            ),
        };
        Triangle::new(a, b, d).expect("preset triangles are non-degenerate")
    }
}

impl TriangleSpec {
    fn build(&self) -> Result<Triangle, Failure> {
        if let Some(preset) = self.preset {
            return Ok(preset.triangle());
        }
        let mut v = [Complex64::new(0.0, 0.0); 3];
        for (slot, text) in v.iter_mut().zip(&self.vertices) {
            *slot = parse_point(text)?;
        }
        Ok(Triangle::new(v[0], v[1], v[2])?)
    }
}

impl BackendFlag {
    fn engine(self) -> Option<Backend> {
        match self {
            BackendFlag::Auto => None,
            BackendFlag::Sigma => Some(Backend::SigmaExact),
            BackendFlag::Jacobi => Some(Backend::JacobiExact),
            BackendFlag::Sc => Some(Backend::SchwarzChristoffel),
        }
    }
}

fn parse_point(text: &str) -> Result<Complex64, String> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| format!("expected a point as `x,y`, got `{text}`"))?;
    let parse = |part: &str| {
        part.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("invalid coordinate `{part}` in `{text}`"))
    };
    Ok(Complex64::new(parse(x)?, parse(y)?))
}

/// Exit status after a successful query: 2 when a requested tolerance
/// was missed, 0 otherwise.
fn tolerance_code(report: &CapacityReport, tol: Option<f64>) -> u8 {
    match tol {
        Some(t) if report.tolerance_achieved > t => EXIT_BEST_EFFORT,
        _ => 0,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            use std::io::Write as _;
            if let Err(err) = std::io::stdout().write_all(text.as_bytes()) {
                // A closed pipe downstream is the reader's choice, not
                // a failure of this process.
                if err.kind() == std::io::ErrorKind::BrokenPipe {
                    return Ok(());
                }
                return Err(err.into());
            }
        }
    }
    Ok(())
}

fn require_json(format: OutputFormat) -> Result<(), Failure> {
    if format == OutputFormat::Json {
        Ok(())
    } else {
        Err("reports are JSON only; drop --format or pass `json`"
            .to_string()
            .into())
    }
}

fn render_json(report: &CapacityReport) -> String {
    let v = report.triangle.vertices();
    let value = serde_json::json!({
        "triangle": [[v[0].re, v[0].im], [v[1].re, v[1].im], [v[2].re, v[2].im]],
        "backend": report.backend.name(),
        "query": report.query.name(),
        "point": [report.point.re, report.point.im],
        "barycentric": report.barycentric,
        "inner_radius": report.inner_radius,
        "distance_to_shortest_side": report.distance_to_shortest_side,
        "evals": report.evals,
        "tolerance_achieved": report.tolerance_achieved,
    });
    format!("{value:#}\n")
}

fn cmd_center(args: CenterArgs) -> Result<u8, Failure> {
    require_json(args.format)?;
    let tri = args.triangle.build()?;
    let report = least_capacity_point(&tri, args.backend.engine())?;
    emit(args.out.as_deref(), &render_json(&report))?;
    Ok(tolerance_code(&report, args.tol))
}

fn cmd_radius(args: RadiusArgs) -> Result<u8, Failure> {
    require_json(args.format)?;
    let tri = args.triangle.build()?;
    let at = parse_point(&args.at)?;
    let report = radius_at(&tri, at, args.backend.engine())?;
    emit(args.out.as_deref(), &render_json(&report))?;
    Ok(tolerance_code(&report, args.tol))
}

fn cmd_figure(args: FigureArgs) -> Result<u8, Failure> {
    let tri = args.triangle.build()?;
    let backend = args.backend.engine();
    let base = match &args.at {
        Some(text) => parse_point(text)?,
        None => least_capacity_point(&tri, backend)?.point,
    };
    let cfg = FigureConfig {
        n_circles: args.circles,
        n_rays: args.rays,
        ..FigureConfig::default()
    };
    let fig = figure_geometry(&tri, base, backend, &cfg)?;
    let text = match args.format {
        OutputFormat::Csv => render_csv(&fig),
        OutputFormat::Svg => render_svg(&tri, &fig),
        OutputFormat::Json => {
            return Err("figures are CSV or SVG; pass --format csv or svg"
                .to_string()
                .into())
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

/// One sample per line. Circle `k` is the image of the disk circle of
/// radius (k+1)/circles, ray `j` the spoke at angle 2*pi*j/rays;
/// coordinates carry 17 significant digits.
fn render_csv(fig: &FigureGeometry) -> String {
    fn push_curve(out: &mut String, kind: &str, id: usize, points: &[Complex64]) {
        for (i, p) in points.iter().enumerate() {
            let _ = writeln!(out, "{kind},{id},{i},{:.16e},{:.16e}", p.re, p.im);
        }
    }
    let mut out = String::from("curve_type,curve_id,sample_index,x,y\n");
    for (k, circle) in fig.circle_images.iter().enumerate() {
        push_curve(&mut out, "circle", k, circle);
    }
    for (j, ray) in fig.ray_images.iter().enumerate() {
        push_curve(&mut out, "ray", j, ray);
    }
    out
}

/// Standalone SVG: triangle outline, circle images as closed polygons,
/// spoke images as polylines. Model y grows upward, so points are
/// reflected into SVG's downward y axis.
fn render_svg(tri: &Triangle, fig: &FigureGeometry) -> String {
    let v = tri.vertices();
    let x0 = v.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
    let x1 = v.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
    let y0 = v.iter().map(|p| p.im).fold(f64::INFINITY, f64::min);
    let y1 = v.iter().map(|p| p.im).fold(f64::NEG_INFINITY, f64::max);
    let margin = 0.04 * tri.diameter();
    let width = (x1 - x0) + 2.0 * margin;
    let height = (y1 - y0) + 2.0 * margin;
    let flip = |y: f64| y0 + y1 - y;
    let points = |curve: &[Complex64]| {
        curve
            .iter()
            .map(|p| format!("{:.8e},{:.8e}", p.re, flip(p.im)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let stroke = tri.diameter() / 320.0;

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"{:.0}\" \
viewBox=\"{:.8e} {:.8e} {:.8e} {:.8e}\">\n",
        (640.0 * height / width).round(),
        x0 - margin,
        y0 - margin,
        width,
        height,
    );
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"#202020\" stroke-width=\"{:.3e}\"/>",
        points(&v),
        1.5 * stroke,
    );
    for circle in &fig.circle_images {
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"{:.3e}\"/>",
            points(circle),
            stroke,
        );
    }
    for ray in &fig.ray_images {
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#b2571f\" stroke-width=\"{:.3e}\"/>",
            points(ray),
            0.75 * stroke,
        );
    }
    out.push_str("</svg>\n");
    out
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let rows = tricap::verify::rows(args.only.as_deref()).map_err(|err| Failure {
        code: EXIT_VERIFY,
        message: format!("verification aborted: {err}"),
    })?;
    if rows.is_empty() {
        return Err(format!(
            "no verification rows match `{}`",
            args.only.as_deref().unwrap_or_default()
        )
        .into());
    }
    let floor = args.tol.unwrap_or(0.0);
    let mut failures = 0usize;
    let mut table = String::new();
    for row in &rows {
        let ok = row.passes(floor);
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            table,
            "{} {:<34} {:>23.16e} expected {:>23.16e} err {:9.3e} tol {:7.1e}",
            if ok { "PASS" } else { "FAIL" },
            row.id,
            row.value,
            row.expected,
            row.error(),
            row.tol.max(floor),
        );
    }
    let _ = writeln!(table, "{} of {} rows pass", rows.len() - failures, rows.len());
    emit(None, &table)?;
    Ok(if failures == 0 { 0 } else { EXIT_VERIFY })
}

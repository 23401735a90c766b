//! `hopspec`: point clouds, closed-form curves and verification suites for
//! hopping-sign tridiagonal operators.

mod error;
mod svg;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopspec::eigen::sort_eigenvalues;
use hopspec::polyalg::verify_identities_with;
use hopspec::seqcore::{c_iterate_word, Branch};
use hopspec::spectra::geometry::{directed_distance, polyline_distance, PointIndex};
use hopspec::spectra::{
    bloch_spectrum, closed_form_spectrum, pi_union, random_finite_pair, random_periodic_sample, CloudPoint,
    FiniteSampleConfig, PeriodicSampleConfig, SpectrumCloud,
};
use hopspec::suite::{ctilde_with_fault, run_verify, summary_table, VerifyConfig};
use hopspec::transfer::{curve_radial_gap, RegionParams};
use hopspec::Complex64;

use error::{CliError, CliResult};
use svg::{Line, Overlay, Panel, ALL_OVERLAYS};

#[derive(Debug, Parser)]
#[command(name = "hopspec", version, about = "Spectra of random hopping-sign tridiagonal operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Union of the spectra of all words of period at most --nmax.
    PiUnion(PiUnionArgs),
    /// Spectra of random periodised matrices with random periods and twists.
    Sample(SampleArgs),
    /// Open and periodised spectra of one random sign vector.
    Finite(FiniteArgs),
    /// Exact identities, golden tables and numerical suites.
    Verify(VerifyArgs),
    /// Closed-form spectrum of an iterate c^(n,±) against its Bloch cloud.
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Point cloud as CSV.
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Figure as SVG.
    #[arg(long)]
    out_svg: Option<PathBuf>,
    /// Guide curves drawn over the cloud.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = ALL_OVERLAYS)]
    overlay: Vec<Overlay>,
    /// Points drawn in the SVG; the CSV always holds all of them.
    #[arg(long, default_value_t = 100_000)]
    max_svg_points: usize,
}

#[derive(Debug, Args)]
struct PiUnionArgs {
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    #[arg(long, default_value_t = 12)]
    nmax: usize,
    #[arg(long, default_value_t = 256)]
    alpha_count: usize,
    /// Band on Φ below which a point counts as inside the hole.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    #[arg(long, default_value_t = 100)]
    nmax: usize,
    /// Probability of +σ.
    #[arg(long, default_value_t = 0.5)]
    p_sigma: f64,
    #[arg(long)]
    seed: u64,
    /// Slack for the annulus and diamond checks.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Open,
    Periodic,
    Both,
}

#[derive(Debug, Args)]
struct FiniteArgs {
    #[arg(long, default_value_t = 0.9025)]
    sigma: f64,
    /// Matrix size.
    #[arg(long, default_value_t = 500)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p_sigma: f64,
    #[arg(long)]
    seed: u64,
    /// Argument of the corner twist α, in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha_arg: f64,
    #[arg(long, value_enum, default_value_t = Shape::Both)]
    shape: Shape,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Identities are checked at m = 2^r for r up to this value.
    #[arg(long, default_value_t = 10)]
    r_max: u32,
    #[arg(long, default_value_t = 512)]
    alpha_count: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Flip c̃ at this 1-based index before the exact checks.
    #[arg(long, num_args = 0..=1, default_missing_value = "3")]
    inject_fault: Option<usize>,
    /// JSON summary.
    #[arg(long)]
    out_json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveMode {
    ClosedForm,
    Bloch,
    Both,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    /// Iterate index; the word has period 2^n.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// `+` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    branch: Branch,
    #[arg(long, value_enum, default_value_t = CurveMode::Both)]
    mode: CurveMode,
    #[arg(long, default_value_t = 512)]
    alpha_count: usize,
    /// Angular samples of the closed-form curve.
    #[arg(long, default_value_t = 720)]
    samples: usize,
    #[command(flatten)]
    out: Output,
}

fn check_sigma(sigma: f64) -> CliResult<()> {
    if sigma.is_finite() && sigma > 0.0 && sigma <= 1.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("--sigma must lie in (0, 1], got {sigma}")))
    }
}

fn check_probability(p: f64) -> CliResult<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("--p-sigma must lie in (0, 1), got {p}")))
    }
}

fn check_positive(name: &str, v: usize) -> CliResult<()> {
    if v == 0 {
        return Err(CliError::Config(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn check_tol(tol: f64) -> CliResult<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("--tol must be finite and non-negative, got {tol}")))
    }
}

/// The invocation as a single shell-like line, with `hopspec` as program name.
fn command_line() -> String {
    let quote = |a: String| {
        if !a.is_empty() && a.chars().all(|c| c.is_ascii_alphanumeric() || "-_.,/=+:".contains(c)) {
            a
        } else {
            format!("'{}'", a.replace('\'', r"'\''"))
        }
    };
    std::iter::once("hopspec".to_string()).chain(std::env::args().skip(1).map(quote)).collect::<Vec<_>>().join(" ")
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut w = create(path)?;
    w.write_all(bytes).and_then(|()| w.flush()).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write_csv(path: &Path, cloud: &SpectrumCloud) -> CliResult<()> {
    let mut w = create(path)?;
    cloud.write_csv(&mut w).and_then(|()| w.flush()).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Half-width of the plotted square: the diamond plus whatever the data needs.
fn extent_for(sigma: f64, clouds: &[&[Complex64]]) -> f64 {
    let guide = RegionParams::new(sigma).map(|p| p.diamond.max(p.annulus_outer)).unwrap_or(2.0);
    let data = clouds.iter().flat_map(|c| c.iter()).map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
    guide.max(data) * 1.05
}

fn write_svg(out: &Output, sigma: f64, seed: Option<u64>, panels: Vec<(String, Vec<Complex64>, Vec<Line>)>) -> CliResult<()> {
    let Some(path) = &out.out_svg else { return Ok(()) };
    let clouds: Vec<&[Complex64]> = panels.iter().map(|(_, pts, _)| pts.as_slice()).collect();
    let extent = extent_for(sigma, &clouds);
    let panels: Vec<Panel> = panels
        .into_iter()
        .map(|(title, points, mut lines)| {
            lines.extend(svg::overlay_lines(sigma, &out.overlay));
            Panel { title, points: svg::thin(&points, out.max_svg_points), lines }
        })
        .collect();
    write_bytes(path, svg::render(&panels, extent, &command_line(), seed).as_bytes())?;
    println!("wrote {}", path.display());
    Ok(())
}

fn print_inclusion(label: &str, cloud: &SpectrumCloud, tol: f64) {
    let inc = cloud.inclusion(tol, true, true);
    println!(
        "{label}: {} eigenvalues, annulus violations {} (worst {:.3e}), diamond violations {} (worst {:.3e})",
        inc.checked, inc.annulus_violations, inc.worst_annulus, inc.diamond_violations, inc.worst_diamond
    );
}

fn print_hole(cloud: &SpectrumCloud, tol: f64) {
    if cloud.sigma >= 1.0 {
        println!("hole: empty at sigma = 1");
        return;
    }
    let h = cloud.hole_report(tol);
    println!(
        "hole: {} points strictly inside, {} beyond the {tol:e} band on Phi, min distance to closed hole {:.6e}",
        h.inside, h.inside_beyond_margin, h.min_distance
    );
}

fn cmd_pi_union(a: &PiUnionArgs) -> CliResult<()> {
    check_sigma(a.sigma)?;
    check_positive("nmax", a.nmax)?;
    check_positive("alpha-count", a.alpha_count)?;
    check_tol(a.tol)?;
    let u = pi_union(a.nmax, a.sigma, a.alpha_count)?;
    println!("{:>6} {:>10} {:>10}", "period", "words", "used");
    for c in &u.counts {
        println!("{:>6} {:>10} {:>10}", c.n, c.raw, c.used);
    }
    println!("points: {}", u.cloud.len());
    print_inclusion("inclusion", &u.cloud, 1e-9);
    print_hole(&u.cloud, a.tol);
    if let Some(p) = &a.out.out_csv {
        write_csv(p, &u.cloud)?;
    }
    let title = format!("pi_{} at sigma = {}", a.nmax, a.sigma);
    write_svg(&a.out, a.sigma, None, vec![(title, u.cloud.values(), Vec::new())])
}

fn cmd_sample(a: &SampleArgs) -> CliResult<()> {
    check_sigma(a.sigma)?;
    check_probability(a.p_sigma)?;
    check_positive("count", a.count)?;
    check_positive("nmax", a.nmax)?;
    check_tol(a.tol)?;
    let cfg = PeriodicSampleConfig { count: a.count, n_max: a.nmax, p_sigma: a.p_sigma, sigma: a.sigma, seed: a.seed };
    let cloud = random_periodic_sample(&cfg)?;
    print_inclusion("inclusion", &cloud, a.tol);
    print_hole(&cloud, 1e-9);
    if let Some(p) = &a.out.out_csv {
        write_csv(p, &cloud)?;
    }
    let title = format!("{} samples, N <= {}, sigma = {}", a.count, a.nmax, a.sigma);
    write_svg(&a.out, a.sigma, Some(a.seed), vec![(title, cloud.values(), Vec::new())])
}

fn cmd_finite(a: &FiniteArgs) -> CliResult<()> {
    check_sigma(a.sigma)?;
    check_probability(a.p_sigma)?;
    check_tol(a.tol)?;
    if a.n < 3 {
        return Err(CliError::Config(format!("--n must be at least 3, got {}", a.n)));
    }
    let alpha = Complex64::from_polar(1.0, a.alpha_arg);
    let cfg = FiniteSampleConfig { n: a.n, p_sigma: a.p_sigma, sigma: a.sigma, seed: a.seed, alpha };
    let pair = random_finite_pair(&cfg)?;
    let mut panels = Vec::new();
    let mut combined = SpectrumCloud::new(a.sigma);
    combined.seed = Some(a.seed);
    if matches!(a.shape, Shape::Open | Shape::Both) {
        let bound = 2.0 * a.sigma.sqrt();
        let worst = pair.open.values().iter().map(|z| z.re.abs() + z.im.abs()).fold(0.0, f64::max);
        println!("open: {} eigenvalues, max |x|+|y| {worst:.6} (bound 2 sqrt(sigma) = {bound:.6})", pair.open.len());
        panels.push((format!("open, N = {}", a.n), pair.open.values(), Vec::new()));
        combined.params = pair.open.params.clone();
        combined.points.extend(pair.open.points.iter().map(|p| CloudPoint { word: Arc::from("open"), ..p.clone() }));
    }
    if matches!(a.shape, Shape::Periodic | Shape::Both) {
        print_inclusion("periodic", &pair.periodic, a.tol);
        panels.push((format!("periodic, N = {}", a.n), pair.periodic.values(), Vec::new()));
        combined.params = pair.periodic.params.clone();
        combined.points.extend(pair.periodic.points.iter().map(|p| CloudPoint { word: Arc::from("periodic"), ..p.clone() }));
    }
    if a.shape == Shape::Both {
        combined.params.retain(|(k, _)| k != "kind");
        combined.params.insert(0, ("kind".into(), "random_finite_pair".into()));
    }
    if let Some(p) = &a.out.out_csv {
        write_csv(p, &combined)?;
    }
    write_svg(&a.out, a.sigma, Some(a.seed), panels)
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<()> {
    if !(1..=16).contains(&a.r_max) {
        return Err(CliError::Config(format!("--r-max must lie in 1..=16, got {}", a.r_max)));
    }
    check_positive("alpha-count", a.alpha_count)?;
    check_tol(a.tol)?;
    if a.inject_fault == Some(0) {
        return Err(CliError::Config("--inject-fault indices start at 1".into()));
    }
    let ct = ctilde_with_fault((1 << a.r_max) + 1, a.inject_fault);
    for r in verify_identities_with(&ct, a.r_max).results {
        let detail = r.detail.map(|d| format!("  {d}")).unwrap_or_default();
        println!("r = {:>2}  {:<14} {}{detail}", r.r, r.kind.name(), r.status.label());
    }
    let cfg = VerifyConfig { r_max: a.r_max, fault: a.inject_fault, alpha_count: a.alpha_count, tol: a.tol, ..Default::default() };
    let outcomes = run_verify(&cfg);
    print!("{}", summary_table(&outcomes));
    if let Some(p) = &a.out_json {
        let json = serde_json::to_string_pretty(&outcomes).expect("outcomes serialize");
        write_bytes(p, format!("{json}\n").as_bytes())?;
        println!("wrote {}", p.display());
    }
    match outcomes.iter().filter(|o| !o.passed()).count() {
        0 => Ok(()),
        failed => Err(CliError::VerifyFailed { failed }),
    }
}

/// Inserts vertices so that no segment is longer than `max_seg`.
fn densify(line: &[Complex64], max_seg: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(line.len());
    for w in line.windows(2) {
        let pieces = ((w[1] - w[0]).norm() / max_seg).ceil().max(1.0) as usize;
        out.extend((0..pieces).map(|j| w[0] + (w[1] - w[0]) * (j as f64 / pieces as f64)));
    }
    out.extend(line.last());
    out
}

fn cmd_curve(a: &CurveArgs) -> CliResult<()> {
    check_sigma(a.sigma)?;
    check_positive("alpha-count", a.alpha_count)?;
    check_positive("samples", a.samples)?;
    if a.n > 12 {
        return Err(CliError::Config(format!("--n must be at most 12, got {}", a.n)));
    }
    let period = 1usize << a.n;
    let mut cloud = SpectrumCloud::new(a.sigma)
        .with_param("kind", "curve")
        .with_param("n", a.n)
        .with_param("branch", a.branch)
        .with_param("mode", format!("{:?}", a.mode));
    let mut lines = Vec::new();
    let mut closed = Vec::new();
    if a.mode != CurveMode::Bloch {
        closed = closed_form_spectrum(a.n, a.branch, a.sigma, a.samples)?;
        let tag: Arc<str> = Arc::from(format!("closed_form_{}", a.branch));
        let nan = Complex64::new(f64::NAN, f64::NAN);
        for part in &closed {
            cloud.points.extend(part.iter().map(|&z| CloudPoint { z, n: period, word: Arc::clone(&tag), alpha: nan }));
            lines.push(Line { points: part.clone(), stroke: "#d35400", width: 1.4, dashed: false });
        }
        let vertices: usize = closed.iter().map(Vec::len).sum();
        println!("closed form: {} piece(s), {vertices} vertices", closed.len());
    }
    let mut bloch = Vec::new();
    if a.mode != CurveMode::ClosedForm {
        let word = c_iterate_word(a.n, a.branch, a.sigma)?;
        let b = bloch_spectrum(&word, a.alpha_count)?;
        cloud.params.push(("alpha_count".into(), a.alpha_count.to_string()));
        cloud.points.extend(b.points.iter().cloned());
        bloch = b.values();
        sort_eigenvalues(&mut bloch);
        println!("bloch: {} eigenvalues over {} twists", bloch.len(), a.alpha_count);
    }
    if a.mode == CurveMode::Both {
        // the radial gap is exact up to rounding; segments are exact at σ = 1
        let mut to_curve: f64 = 0.0;
        for &z in &bloch {
            let d = if a.sigma < 1.0 {
                curve_radial_gap(z, a.n, a.branch, a.sigma)?
            } else {
                closed.iter().map(|l| polyline_distance(z, l)).fold(f64::INFINITY, f64::min)
            };
            to_curve = to_curve.max(d);
        }
        let dense: Vec<Complex64> = closed.iter().flat_map(|l| densify(l, 0.01)).collect();
        let to_cloud = directed_distance(&dense, &PointIndex::new(&bloch));
        println!("hausdorff: bloch -> closed form {to_curve:.3e}, closed form -> bloch {to_cloud:.3e}, symmetric {:.3e}", to_curve.max(to_cloud));
    }
    if let Some(p) = &a.out.out_csv {
        write_csv(p, &cloud)?;
    }
    let title = format!("c^({},{}) at sigma = {}", a.n, a.branch, a.sigma);
    write_svg(&a.out, a.sigma, None, vec![(title, bloch, lines)])
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::PiUnion(a) => cmd_pi_union(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Finite(a) => cmd_finite(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Curve(a) => cmd_curve(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

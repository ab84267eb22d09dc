//! Command-line front end: `run`, `compare` and `scenarios`.
//!
//! Output files:
//! - `snapshots.csv`: header `t,x,u`, one row per node per snapshot, ordered
//!   by time then node, numbers printed with 17 significant digits.
//! - `manifest.json`: the resolved configuration. Feeding it back through
//!   `--config` reproduces the run byte for byte.
//! - `summary.json`: manifest, mass and min/max traces, bound report,
//!   steady-state time and (Riemann-Liouville only) the final flux split.
//! - `compare.csv` / `compare.json`: two laws side by side and the
//!   per-snapshot max difference.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{self, MaxPrincipleReport, DEFAULT_BOUND_TOL};
use crate::error::SolverError;
use crate::flux::{Decomposition, FluxLaw};
use crate::scenarios::{self, Scenario, SCENARIO_NAMES};
use crate::solver::{self, Boundary, Grid, RunResult, SimConfig};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Cap on the number of trace points written to `summary.json`.
pub const TRACE_POINTS: usize = 10_000;

/// Default threshold for the reported steady-state time.
pub const STEADY_EPS: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            CliError::Solver(SolverError::Unstable { .. }) => 3,
            CliError::Solver(_) | CliError::Json { .. } => 2,
            CliError::Io { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fracflux", version, about = "Space-fractional diffusion on [0, 1] with pluggable flux laws")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario or config file and write snapshots, manifest and summary.
    Run(RunArgs),
    /// Run one scenario under two flux laws and diff the snapshots.
    Compare(CompareArgs),
    /// List the built-in scenario names.
    Scenarios,
}

#[derive(Debug, Clone, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    /// Built-in scenario name.
    #[arg(long, group = "source")]
    pub scenario: Option<String>,
    /// JSON config (a previously written manifest.json works).
    #[arg(long, group = "source")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Fractional order in (0, 1].
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Number of cells; the grid has n + 1 nodes.
    #[arg(long)]
    pub n: Option<usize>,
    /// Time step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time.
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Comma-separated snapshot times.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub snapshots: Option<Vec<f64>>,
    /// Left boundary, `dirichlet:<value>` or `flux:<value>`.
    #[arg(long = "left-bc", value_parser = parse_boundary)]
    pub left_bc: Option<Boundary>,
    /// Right boundary, `dirichlet:<value>` or `flux:<value>`.
    #[arg(long = "right-bc", value_parser = parse_boundary)]
    pub right_bc: Option<Boundary>,
    /// Stop early once a step changes the field by less than this.
    #[arg(long = "steady-eps")]
    pub steady_eps: Option<f64>,
    /// Run even if Dirichlet values disagree with the initial data.
    #[arg(long = "force-inconsistent-bc")]
    pub force_inconsistent_bc: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum)]
    pub flux: Option<FluxLaw>,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Directory for the output files.
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: Source,
    /// The two laws to compare, e.g. `--flux rl,caputo`.
    #[arg(long, value_enum, value_delimiter = ',', num_args = 1..=2, required = true)]
    pub flux: Vec<FluxLaw>,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Directory for the output files.
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

fn parse_boundary(s: &str) -> Result<Boundary, String> {
    let (kind, value) = s.split_once(':').ok_or_else(|| format!("expected kind:value, got '{s}'"))?;
    let value: f64 = value.parse().map_err(|e| format!("bad boundary value '{value}': {e}"))?;
    match kind {
        "dirichlet" => Ok(Boundary::Dirichlet(value)),
        "flux" => Ok(Boundary::FixedFlux(value)),
        other => Err(format!("unknown boundary kind '{other}' (expected dirichlet or flux)")),
    }
}

/// Resolved configuration echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(default)]
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub dx: f64,
    #[serde(default)]
    pub stability_ratio: f64,
    /// Parameters that were filled with defaults rather than fixed by the experiment.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumed: Vec<String>,
    #[serde(flatten)]
    pub config: SimConfig,
}

fn default_n() -> usize {
    scenarios::DEFAULT_N
}

impl RunManifest {
    fn finalize(mut self) -> Result<Self, SolverError> {
        let grid = Grid::new(self.n)?;
        self.config = self.config.snapped();
        self.dx = grid.dx();
        self.stability_ratio = solver::stability_ratio(&self.config, &grid);
        self.tool_version = TOOL_VERSION.to_string();
        Ok(self)
    }

    pub fn grid(&self) -> Result<Grid, SolverError> {
        Ok(Grid::new(self.n)?)
    }
}

fn from_scenario(s: Scenario) -> RunManifest {
    RunManifest {
        tool_version: String::new(),
        scenario: Some(s.name),
        n: s.grid.n(),
        dx: 0.0,
        stability_ratio: 0.0,
        assumed: s.assumed.iter().map(|a| a.to_string()).collect(),
        config: s.cfg,
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|source| CliError::Json { path: path.into(), source })?;
    text.push('\n');
    write_file(path, &text)
}

/// Flags beat file values, file values beat defaults.
pub fn resolve(source: &Source, flux: Option<FluxLaw>, o: &Overrides) -> Result<RunManifest, CliError> {
    let mut m = match (&source.scenario, &source.config) {
        (Some(name), _) => from_scenario(scenarios::make_scenario(name)?),
        (None, Some(path)) => read_json::<RunManifest>(path)?,
        (None, None) => {
            return Err(SolverError::Config("either --scenario or --config is required".into()).into())
        }
    };
    let c = &mut m.config;
    if let Some(law) = flux {
        c.flux = law;
    }
    if let Some(alpha) = o.alpha {
        c.alpha = alpha;
        m.assumed.retain(|a| !a.starts_with("alpha"));
    }
    if let Some(n) = o.n {
        m.n = n;
    }
    if let Some(dt) = o.dt {
        c.dt = dt;
    }
    if let Some(t_end) = o.t_end {
        c.t_end = t_end;
        if o.snapshots.is_none() {
            c.snapshot_times.retain(|&t| t <= t_end);
        }
    }
    if let Some(times) = &o.snapshots {
        c.snapshot_times = times.clone();
    }
    if let Some(bc) = o.left_bc {
        c.boundary.left = bc;
    }
    if let Some(bc) = o.right_bc {
        c.boundary.right = bc;
    }
    if let Some(eps) = o.steady_eps {
        c.steady_eps = Some(eps);
    }
    if o.force_inconsistent_bc {
        c.force_inconsistent_bc = true;
    }
    c.validate()?;
    Ok(m.finalize()?)
}

pub fn execute_manifest(m: &RunManifest) -> Result<RunResult, SolverError> {
    let grid = m.grid()?;
    let initial = solver::Field::sample(&grid, &m.config.initial);
    solver::run(&m.config, &grid, initial)
}

/// `%.17g`-style rendering: 17 significant digits, trailing zeros trimmed,
/// exponent form outside `[1e-4, 1e17)`. Locale independent.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn snapshots_csv(result: &RunResult, grid: &Grid) -> String {
    let mut out = String::from("t,x,u\n");
    for snap in &result.snapshots {
        let t = format_g17(snap.t);
        for (i, u) in snap.u.iter().enumerate() {
            let _ = writeln!(out, "{t},{},{}", format_g17(grid.x(i)), format_g17(*u));
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct FaceSplit {
    pub t: f64,
    pub x: Vec<f64>,
    pub diffusive: Vec<f64>,
    pub advective: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct RunSummary<'a> {
    pub manifest: &'a RunManifest,
    pub steps_taken: u64,
    pub final_time: f64,
    pub warnings: &'a [String],
    /// `[t, mass]` pairs.
    pub mass_trace: Vec<[f64; 2]>,
    /// `[t, min u, max u]` triples.
    pub min_max_trace: Vec<[f64; 3]>,
    pub max_mass_drift: f64,
    pub max_principle: MaxPrincipleReport,
    pub steady_state_eps: f64,
    pub steady_state_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flux_decomposition: Option<FaceSplit>,
}

pub fn summarize<'a>(m: &'a RunManifest, result: &'a RunResult, grid: &Grid) -> RunSummary<'a> {
    let points = result.trace.downsampled(TRACE_POINTS);
    let initial = solver::Field::sample(grid, &m.config.initial);
    let eps = m.config.steady_eps.unwrap_or(STEADY_EPS);
    let split = |d: &Decomposition| FaceSplit {
        t: result.final_field.t,
        x: (0..grid.n()).map(|i| (i as f64 + 0.5) * grid.dx()).collect(),
        diffusive: d.diffusive.clone(),
        advective: d.advective.clone(),
    };
    RunSummary {
        manifest: m,
        steps_taken: result.steps_taken,
        final_time: result.final_field.t,
        warnings: &result.warnings,
        mass_trace: points.iter().map(|r| [r.t, r.mass]).collect(),
        min_max_trace: points.iter().map(|r| [r.t, r.min, r.max]).collect(),
        max_mass_drift: result.trace.max_mass_drift(),
        max_principle: diagnostics::max_principle_check(&result.trace, &initial.u, DEFAULT_BOUND_TOL),
        steady_state_eps: eps,
        steady_state_time: diagnostics::steady_state_time(&result.trace, eps),
        flux_decomposition: result.final_decomposition.as_ref().map(split),
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })
}

pub fn run_command(args: &RunArgs) -> Result<RunManifest, CliError> {
    let m = resolve(&args.source, args.flux, &args.overrides)?;
    let grid = m.grid()?;
    let result = execute_manifest(&m)?;
    ensure_dir(&args.out_dir)?;
    write_json(&args.out_dir.join("manifest.json"), &m)?;
    write_file(&args.out_dir.join("snapshots.csv"), &snapshots_csv(&result, &grid))?;
    write_json(&args.out_dir.join("summary.json"), &summarize(&m, &result, &grid))?;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotDiff {
    pub t: f64,
    pub max_abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareVerdict {
    pub law_a: FluxLaw,
    pub law_b: FluxLaw,
    pub manifest: RunManifest,
    pub per_snapshot: Vec<SnapshotDiff>,
    pub max_abs_diff: f64,
}

pub fn compare_command(args: &CompareArgs) -> Result<CompareVerdict, CliError> {
    let (law_a, law_b) = match args.flux.as_slice() {
        [a, b] => (*a, *b),
        other => {
            return Err(SolverError::Config(format!("compare needs two flux laws, got {}", other.len())).into())
        }
    };
    let ma = resolve(&args.source, Some(law_a), &args.overrides)?;
    let mut mb = ma.clone();
    mb.config.flux = law_b;
    let grid = ma.grid()?;

    let (ra, rb) = std::thread::scope(|s| {
        let ha = s.spawn(|| execute_manifest(&ma));
        let hb = s.spawn(|| execute_manifest(&mb));
        (ha.join().expect("run thread panicked"), hb.join().expect("run thread panicked"))
    });
    let (ra, rb) = (ra?, rb?);

    let mut csv = String::from("t,x,u_a,u_b,diff\n");
    let mut per_snapshot = Vec::new();
    for (sa, sb) in ra.snapshots.iter().zip(&rb.snapshots) {
        let t = format_g17(sa.t);
        let mut worst = 0.0_f64;
        for (i, (a, b)) in sa.u.iter().zip(&sb.u).enumerate() {
            let d = a - b;
            worst = worst.max(d.abs());
            let _ = writeln!(
                csv,
                "{t},{},{},{},{}",
                format_g17(grid.x(i)),
                format_g17(*a),
                format_g17(*b),
                format_g17(d)
            );
        }
        per_snapshot.push(SnapshotDiff { t: sa.t, max_abs_diff: worst });
    }
    let max_abs_diff = per_snapshot.iter().fold(0.0_f64, |m, s| m.max(s.max_abs_diff));
    let verdict = CompareVerdict { law_a, law_b, manifest: ma, per_snapshot, max_abs_diff };

    ensure_dir(&args.out_dir)?;
    write_file(&args.out_dir.join("compare.csv"), &csv)?;
    write_json(&args.out_dir.join("compare.json"), &verdict)?;
    Ok(verdict)
}

pub fn scenarios_listing() -> String {
    let mut out = String::new();
    for name in SCENARIO_NAMES {
        let s = scenarios::make_scenario(name).expect("built-in scenario");
        let _ = writeln!(out, "{name:<18} {}", s.expected);
    }
    out
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Run(args) => {
            let m = run_command(args)?;
            println!(
                "wrote {} ({} law, alpha = {}, t_end = {})",
                args.out_dir.display(),
                m.config.flux,
                m.config.alpha,
                m.config.t_end
            );
        }
        Command::Compare(args) => {
            let v = compare_command(args)?;
            for s in &v.per_snapshot {
                println!("t = {:<10} max|{} - {}| = {:e}", s.t, v.law_a, v.law_b, s.max_abs_diff);
            }
        }
        Command::Scenarios => print!("{}", scenarios_listing()),
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_rendering() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(0.01), "0.01");
        assert_eq!(format_g17(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(format_g17(32.0), "32");
        assert_eq!(format_g17(-2.5), "-2.5");
        assert_eq!(format_g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(format_g17(1.5e20), "1.5e+20");
        assert_eq!(format_g17(0.0), "0");
        assert_eq!(format_g17(123456.0), "123456");
    }

    #[test]
    fn g17_round_trips() {
        for v in [1.0 / 3.0, 5.000000000000001, 2.7032379004218, 1e-300, -7.25e-6, 9.261085678099217] {
            assert_eq!(format_g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn boundary_flags() {
        assert_eq!(parse_boundary("dirichlet:32").unwrap(), Boundary::Dirichlet(32.0));
        assert_eq!(parse_boundary("flux:-0.5").unwrap(), Boundary::FixedFlux(-0.5));
        assert!(parse_boundary("neumann:0").is_err());
        assert!(parse_boundary("flux").is_err());
    }

    #[test]
    fn overrides_take_precedence() {
        let source = Source { scenario: Some("pulse-reflective".into()), config: None };
        let o = Overrides { alpha: Some(0.8), t_end: Some(0.5), n: Some(50), ..Default::default() };
        let m = resolve(&source, Some(FluxLaw::RiemannLiouville), &o).unwrap();
        assert_eq!(m.config.alpha, 0.8);
        assert_eq!(m.config.flux, FluxLaw::RiemannLiouville);
        assert_eq!(m.n, 50);
        assert_eq!(m.dx, 0.02);
        assert_eq!(m.config.snapshot_times, vec![0.0, 0.05, 0.25]);
    }

    #[test]
    fn manifest_json_round_trip() {
        let source = Source { scenario: Some("fig7-shifted".into()), config: None };
        let m = resolve(&source, None, &Overrides::default()).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: RunManifest = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.clone().finalize().unwrap(), m);
        assert!(m.assumed.iter().any(|a| a.starts_with("alpha")));
    }
}

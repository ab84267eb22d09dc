//! Explicit control-volume march of `u_t + q_x = 0` on `[0, 1]`.
//!
//! Nodes sit at `x_i = i * dx`, `i = 0..=n`. Interior node `i` owns the
//! volume `[(i - 0.5) dx, (i + 0.5) dx]`; the end nodes own half volumes.
//! One forward-Euler step reads
//!
//! ```text
//! u_i  <- u_i + dt/dx * (q[i-1] - q[i])               1 <= i <= n-1
//! u_0  <- u_0 + 2 dt/dx * (q_left - q[0])            fixed flux at x = 0
//! u_n  <- u_n + 2 dt/dx * (q[n-1] - q_right)         fixed flux at x = 1
//! ```
//!
//! with `q[i]` the flux at face `(i + 0.5) dx`. Dirichlet ends are pinned.
//! Summing the update with half weights at the ends telescopes, so the
//! discrete mass changes by exactly `dt * (q_left - q_right)` per step.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{self, DiagnosticTrace};
use crate::error::{DomainError, SolverError};
use crate::flux::{Decomposition, FaceFluxes, FluxLaw};
use crate::scenarios::Profile;
use crate::weights::GrunwaldTable;

/// Growth factor over the initial magnitude at which a run is declared unstable.
pub const BLOWUP_FACTOR: f64 = 1e12;

/// Relative tolerance when checking Dirichlet values against initial data.
const CONSISTENCY_TOL: f64 = 1e-12;

/// `n + 1` equispaced nodes on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    dx: f64,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self, DomainError> {
        if n == 0 {
            return Err(DomainError::TooFewNodes(1));
        }
        Ok(Self { n, dx: 1.0 / n as f64 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(move |i| self.x(i))
    }
}

/// Condition at one end of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Boundary {
    /// Pinned value; `Dirichlet(0)` is an absorbing wall.
    Dirichlet(f64),
    /// Prescribed flux; `FixedFlux(0)` is a reflective wall.
    FixedFlux(f64),
}

impl Boundary {
    pub const REFLECTIVE: Boundary = Boundary::FixedFlux(0.0);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub left: Boundary,
    pub right: Boundary,
}

impl BoundarySpec {
    pub fn reflective() -> Self {
        Self { left: Boundary::REFLECTIVE, right: Boundary::REFLECTIVE }
    }

    pub fn dirichlet(value: f64) -> Self {
        Self { left: Boundary::Dirichlet(value), right: Boundary::Dirichlet(value) }
    }
}

fn default_warn_ratio() -> f64 {
    0.5
}

fn default_diffusivity() -> f64 {
    1.0
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Everything a run needs besides the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub alpha: f64,
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_times: Vec<f64>,
    pub flux: FluxLaw,
    pub boundary: BoundarySpec,
    pub initial: Profile,
    #[serde(default = "default_warn_ratio")]
    pub stability_warn_ratio: f64,
    /// Multiplies every face flux. Unit diffusivity unless overridden.
    #[serde(default = "default_diffusivity")]
    pub diffusivity: f64,
    /// Stop once the max-norm change of one step drops below this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steady_eps: Option<f64>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub force_inconsistent_bc: bool,
}

impl SimConfig {
    pub fn new(
        alpha: f64,
        dt: f64,
        t_end: f64,
        flux: FluxLaw,
        boundary: BoundarySpec,
        initial: Profile,
    ) -> Self {
        Self {
            alpha,
            dt,
            t_end,
            snapshot_times: Vec::new(),
            flux,
            boundary,
            initial,
            stability_warn_ratio: default_warn_ratio(),
            diffusivity: default_diffusivity(),
            steady_eps: None,
            force_inconsistent_bc: false,
        }
    }

    pub fn with_snapshots(mut self, times: &[f64]) -> Self {
        self.snapshot_times = times.to_vec();
        self
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |msg: String| Err(SolverError::Config(msg));
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(DomainError::Alpha(self.alpha).into());
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("time step must be positive, got {}", self.dt));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad(format!("final time must be non-negative, got {}", self.t_end));
        }
        if !(self.diffusivity.is_finite() && self.diffusivity >= 0.0) {
            return bad(format!("diffusivity must be non-negative, got {}", self.diffusivity));
        }
        if let Some(eps) = self.steady_eps {
            if eps.is_nan() || eps <= 0.0 {
                return bad(format!("steady-state threshold must be positive, got {eps}"));
            }
        }
        if self.snapshot_times.windows(2).any(|w| w[0] > w[1]) {
            return bad("snapshot times must be sorted".into());
        }
        if let Some(t) = self.snapshot_times.iter().find(|t| !(**t >= 0.0 && **t <= self.t_end)) {
            return bad(format!("snapshot time {t} outside [0, {}]", self.t_end));
        }
        for b in [self.boundary.left, self.boundary.right] {
            let (Boundary::Dirichlet(v) | Boundary::FixedFlux(v)) = b;
            if !v.is_finite() {
                return bad(format!("boundary value {v} is not finite"));
            }
        }
        Ok(())
    }

    /// Number of steps to reach `t_end`, rounded to the nearest step.
    pub fn total_steps(&self) -> u64 {
        (self.t_end / self.dt).round() as u64
    }

    /// Snapshot times as step indices, rounded to the nearest multiple of `dt`.
    pub fn snapshot_steps(&self) -> Vec<u64> {
        let mut steps: Vec<u64> =
            self.snapshot_times.iter().map(|t| (t / self.dt).round() as u64).collect();
        steps.dedup();
        steps
    }

    /// Copy with snapshot times and final time snapped onto the step lattice.
    pub fn snapped(&self) -> Self {
        let mut cfg = self.clone();
        cfg.snapshot_times = self.snapshot_steps().iter().map(|&k| k as f64 * self.dt).collect();
        cfg.t_end = self.total_steps() as f64 * self.dt;
        cfg
    }
}

/// Nodal values at one time level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub t: f64,
    pub u: Vec<f64>,
}

impl Field {
    pub fn new(t: f64, u: Vec<f64>) -> Self {
        Self { t, u }
    }

    /// Samples `profile` at the grid nodes.
    pub fn sample(grid: &Grid, profile: &Profile) -> Self {
        Self { t: 0.0, u: grid.positions().map(|x| profile.eval(x)).collect() }
    }

    pub fn constant(grid: &Grid, value: f64) -> Self {
        Self { t: 0.0, u: vec![value; grid.node_count()] }
    }
}

/// Snapshots plus per-step diagnostics of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub snapshots: Vec<Field>,
    pub final_field: Field,
    pub trace: DiagnosticTrace,
    pub steps_taken: u64,
    pub stability_ratio: f64,
    pub warnings: Vec<String>,
    /// Riemann-Liouville flux split evaluated on the final field.
    pub final_decomposition: Option<Decomposition>,
}

impl RunResult {
    pub fn snapshot_at(&self, t: f64, dt: f64) -> Option<&Field> {
        self.snapshots.iter().find(|f| ((f.t - t) / dt).abs() < 0.5)
    }
}

/// `dt / dx^(1 + alpha)`; an advisory indicator only. The Fourier law is
/// second order whatever `alpha` says, so it is rated with `alpha = 1`.
pub fn stability_ratio(cfg: &SimConfig, grid: &Grid) -> f64 {
    let order = match cfg.flux {
        FluxLaw::Fourier => 1.0,
        _ => cfg.alpha,
    };
    cfg.dt / grid.dx().powf(1.0 + order)
}

fn step_index(t: f64, dt: f64) -> u64 {
    (t / dt).round() as u64
}

/// Advances `field` by one time step given its face fluxes.
pub fn step(
    field: &Field,
    faces: &FaceFluxes,
    grid: &Grid,
    cfg: &SimConfig,
) -> Result<Field, SolverError> {
    let n = grid.n();
    if field.u.len() != n + 1 {
        return Err(DomainError::SizeMismatch { field: field.u.len(), table: n + 1 }.into());
    }
    if faces.len() != n {
        return Err(DomainError::SizeMismatch { field: faces.len() + 1, table: n + 1 }.into());
    }
    let u = &field.u;
    let q = &faces.q;
    let r = cfg.dt / grid.dx();

    let mut next = Vec::with_capacity(n + 1);
    next.push(match cfg.boundary.left {
        Boundary::Dirichlet(v) => v,
        Boundary::FixedFlux(q_left) => u[0] + 2.0 * r * (q_left - q[0]),
    });
    for i in 1..n {
        next.push(u[i] + r * (q[i - 1] - q[i]));
    }
    next.push(match cfg.boundary.right {
        Boundary::Dirichlet(v) => v,
        Boundary::FixedFlux(q_right) => u[n] + 2.0 * r * (q[n - 1] - q_right),
    });

    let k = step_index(field.t, cfg.dt) + 1;
    if let Some(i) = next.iter().position(|v| !v.is_finite()) {
        return Err(SolverError::Unstable {
            step: k,
            t: k as f64 * cfg.dt,
            reason: format!("non-finite value at node {i}"),
        });
    }
    Ok(Field::new(k as f64 * cfg.dt, next))
}

/// Face fluxes for `u` under the configured law and diffusivity.
pub fn evaluate_faces(
    u: &[f64],
    cfg: &SimConfig,
    table: &GrunwaldTable,
) -> Result<FaceFluxes, DomainError> {
    let mut faces = cfg.flux.faces(u, table)?;
    if cfg.diffusivity != 1.0 {
        faces.scale(cfg.diffusivity);
    }
    Ok(faces)
}

fn check_consistency(boundary: Boundary, value: f64, side: &str) -> Result<(), SolverError> {
    if let Boundary::Dirichlet(v) = boundary {
        if (value - v).abs() > CONSISTENCY_TOL * v.abs().max(1.0) {
            return Err(SolverError::Config(format!(
                "initial value {value} at {side} end disagrees with Dirichlet value {v}"
            )));
        }
    }
    Ok(())
}

/// Marches `initial` to `cfg.t_end` (or to steady state when `steady_eps`
/// is set), recording snapshots and per-step diagnostics.
pub fn run(cfg: &SimConfig, grid: &Grid, initial: Field) -> Result<RunResult, SolverError> {
    cfg.validate()?;
    if initial.u.len() != grid.node_count() {
        return Err(DomainError::SizeMismatch { field: initial.u.len(), table: grid.node_count() }.into());
    }
    if let Some(i) = initial.u.iter().position(|v| !v.is_finite()) {
        return Err(SolverError::Config(format!("initial value at node {i} is not finite")));
    }
    if !cfg.force_inconsistent_bc {
        check_consistency(cfg.boundary.left, initial.u[0], "left")?;
        check_consistency(cfg.boundary.right, initial.u[grid.n()], "right")?;
    }

    let table = GrunwaldTable::build(cfg.alpha, grid.dx(), grid.n())?;
    let ratio = stability_ratio(cfg, grid);
    let mut warnings = Vec::new();
    if ratio > cfg.stability_warn_ratio {
        let msg = format!(
            "stability ratio dt/dx^(1+alpha) = {ratio} exceeds {}; the explicit scheme may blow up",
            cfg.stability_warn_ratio
        );
        warn!("{msg}");
        warnings.push(msg);
    }

    let total = cfg.total_steps();
    let snapshot_steps = cfg.snapshot_steps();
    let limit = BLOWUP_FACTOR * initial.u.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let record_split = cfg.flux == FluxLaw::RiemannLiouville;

    let mut field = Field::new(0.0, initial.u);
    let mut trace = DiagnosticTrace::new(diagnostics::summarize(&field.u, grid, 0, 0.0, 0.0));
    let mut snapshots = Vec::with_capacity(snapshot_steps.len());
    let mut next_snapshot = snapshot_steps.iter().peekable();

    let mut k = 0u64;
    loop {
        let due = next_snapshot.peek().is_some_and(|&&s| s == k);
        let faces = evaluate_faces(&field.u, cfg, &table)?;
        if due {
            next_snapshot.next();
            snapshots.push(field.clone());
            if record_split {
                if let Some(d) = &faces.decomposition {
                    trace.decompositions.push((field.t, d.clone()));
                }
            }
        }
        if k == total {
            break;
        }

        let next = step(&field, &faces, grid, cfg)?;
        k += 1;
        if let Some(i) = next.u.iter().position(|v| v.abs() > limit) {
            return Err(SolverError::Unstable {
                step: k,
                t: next.t,
                reason: format!("|u| at node {i} exceeds {limit:e}"),
            });
        }
        let change = field.u.iter().zip(&next.u).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        trace.records.push(diagnostics::summarize(&next.u, grid, k, next.t, change));
        field = next;

        if cfg.steady_eps.is_some_and(|eps| change < eps) {
            break;
        }
    }

    let final_decomposition = if record_split {
        evaluate_faces(&field.u, cfg, &table)?.decomposition
    } else {
        None
    };

    Ok(RunResult {
        snapshots,
        final_field: field,
        trace,
        steps_taken: k,
        stability_ratio: ratio,
        warnings,
        final_decomposition,
    })
}

//! Mass accounting, bound monitoring, steady-state detection and the
//! affine-rescaling check.

use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::flux::{Decomposition, FluxLaw};
use crate::scenarios::Scenario;
use crate::solver::{self, Grid};

/// Default slack for bound violations.
pub const DEFAULT_BOUND_TOL: f64 = 1e-6;

/// Trapezoid mass `(dx/2) u_0 + dx * sum(u_1..u_{n-1}) + (dx/2) u_n`.
pub fn total_mass(u: &[f64], grid: &Grid) -> f64 {
    let n = u.len() - 1;
    let dx = grid.dx();
    let interior: f64 = u[1..n].iter().sum();
    0.5 * dx * u[0] + dx * interior + 0.5 * dx * u[n]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: u64,
    pub t: f64,
    pub mass: f64,
    pub min: f64,
    pub max: f64,
    /// Max-norm change from the previous step; zero for the initial record.
    pub max_change: f64,
}

pub(crate) fn summarize(u: &[f64], grid: &Grid, step: u64, t: f64, max_change: f64) -> StepRecord {
    let (min, max) = u
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    StepRecord { step, t, mass: total_mass(u, grid), min, max, max_change }
}

/// One record for the initial state and one per completed step.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagnosticTrace {
    pub records: Vec<StepRecord>,
    /// Riemann-Liouville flux split at each snapshot time.
    pub decompositions: Vec<(f64, Decomposition)>,
}

impl DiagnosticTrace {
    pub fn new(initial: StepRecord) -> Self {
        Self { records: vec![initial], decompositions: Vec::new() }
    }

    pub fn initial(&self) -> Option<&StepRecord> {
        self.records.first()
    }

    pub fn last(&self) -> Option<&StepRecord> {
        self.records.last()
    }

    /// Largest `|M_k - M_0|` over the trace.
    pub fn max_mass_drift(&self) -> f64 {
        let Some(m0) = self.initial().map(|r| r.mass) else { return 0.0 };
        self.records.iter().fold(0.0, |d, r| d.max((r.mass - m0).abs()))
    }

    /// At most `limit` records, evenly strided, always keeping the last one.
    pub fn downsampled(&self, limit: usize) -> Vec<StepRecord> {
        let len = self.records.len();
        if len <= limit {
            return self.records.clone();
        }
        if limit < 2 {
            return self.records.iter().rev().take(limit).copied().collect();
        }
        let stride = (len - 1).div_ceil(limit - 1);
        let mut out: Vec<StepRecord> = self.records.iter().step_by(stride).copied().collect();
        if out.last().map(|r| r.step) != self.records.last().map(|r| r.step) {
            out.push(self.records[len - 1]);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub step: u64,
    pub t: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxPrincipleReport {
    pub lower: f64,
    pub upper: f64,
    pub tol: f64,
    pub first_violation: Option<Violation>,
    /// Most negative `min u - lower` seen (zero if never below).
    pub worst_undershoot: f64,
    /// Largest `max u - upper` seen (zero if never above).
    pub worst_overshoot: f64,
}

impl MaxPrincipleReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks that every step stays within `[min g - tol, max g + tol]`.
///
/// For nonnegative data with homogeneous boundary values `min g` is 0, which
/// is the usual statement; shifted data is judged against its own lower bound.
pub fn max_principle_check(trace: &DiagnosticTrace, g: &[f64], tol: f64) -> MaxPrincipleReport {
    let lower = g.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut report = MaxPrincipleReport {
        lower,
        upper,
        tol,
        first_violation: None,
        worst_undershoot: 0.0,
        worst_overshoot: 0.0,
    };
    for r in &trace.records {
        report.worst_undershoot = report.worst_undershoot.min(r.min - lower);
        report.worst_overshoot = report.worst_overshoot.max(r.max - upper);
        if report.first_violation.is_none() && (r.min < lower - tol || r.max > upper + tol) {
            report.first_violation = Some(Violation { step: r.step, t: r.t, min: r.min, max: r.max });
        }
    }
    report
}

/// First time at which one step changed the field by less than `eps` in max norm.
pub fn steady_state_time(trace: &DiagnosticTrace, eps: f64) -> Option<f64> {
    trace.records.iter().skip(1).find(|r| r.max_change < eps).map(|r| r.t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub law: FluxLaw,
    pub scale: f64,
    pub offset: f64,
    /// `(t, max_i |u'_i - (a u_i + b)|)` per snapshot, final time last.
    pub per_snapshot: Vec<(f64, f64)>,
    pub max_deviation: f64,
}

/// Runs `scenario` and its image under `v -> a v + b` with `law` and
/// measures how far the second run is from the mapped first run.
pub fn equivariance_test(
    scenario: &Scenario,
    law: FluxLaw,
    a: f64,
    b: f64,
) -> Result<EquivarianceReport, SolverError> {
    let base = scenario.clone().with_flux(law);
    let mapped = base.clone().affine(a, b);
    let r0 = solver::run(&base.cfg, &base.grid, base.initial_field())?;
    let r1 = solver::run(&mapped.cfg, &mapped.grid, mapped.initial_field())?;

    let deviation = |u: &[f64], v: &[f64]| {
        u.iter().zip(v).fold(0.0_f64, |m, (x, y)| m.max((y - (a * x + b)).abs()))
    };
    let mut per_snapshot: Vec<(f64, f64)> = r0
        .snapshots
        .iter()
        .zip(&r1.snapshots)
        .map(|(s0, s1)| (s0.t, deviation(&s0.u, &s1.u)))
        .collect();
    if per_snapshot.last().map(|p| p.0) != Some(r0.final_field.t) {
        per_snapshot.push((r0.final_field.t, deviation(&r0.final_field.u, &r1.final_field.u)));
    }
    let max_deviation = per_snapshot.iter().fold(0.0_f64, |m, p| m.max(p.1));
    Ok(EquivarianceReport { law, scale: a, offset: b, per_snapshot, max_deviation })
}

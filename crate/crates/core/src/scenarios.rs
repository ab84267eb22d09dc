//! Named initial/boundary setups for the standard experiments.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::flux::FluxLaw;
use crate::solver::{Boundary, BoundarySpec, Field, Grid, SimConfig};

/// Names accepted by [`make_scenario`].
pub const SCENARIO_NAMES: [&str; 5] =
    ["pulse-reflective", "ice-warsaw", "ice-minneapolis", "fig7-zero", "fig7-shifted"];

pub const DEFAULT_N: usize = 100;
pub const DEFAULT_DT: f64 = 0.0005;
pub const DEFAULT_ALPHA: f64 = 0.5;

/// Tent of unit area centred on `x = 0.5`, peak 5, support `[0.3, 0.7]`.
pub fn triangular_pulse(x: f64) -> f64 {
    if x < 0.3 {
        0.0
    } else if x < 0.5 {
        25.0 * x - 7.5
    } else if x < 0.7 {
        -25.0 * x + 17.5
    } else {
        0.0
    }
}

/// Unit-area bump supported on `(0, 1/4)`.
pub fn fig7_bump(x: f64) -> f64 {
    if x > 0.0 && x < 0.25 {
        let s = x - 0.25;
        64.0 * PI.powi(3) / (PI * PI - 4.0) * s * s * (4.0 * PI * x).sin()
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileKind {
    TriangularPulse,
    Fig7Bump,
    Constant { value: f64 },
}

impl ProfileKind {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ProfileKind::TriangularPulse => triangular_pulse(x),
            ProfileKind::Fig7Bump => fig7_bump(x),
            ProfileKind::Constant { value } => value,
        }
    }
}

fn one() -> f64 {
    1.0
}

/// `scale * base(x) + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    #[serde(flatten)]
    pub base: ProfileKind,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default)]
    pub offset: f64,
}

impl Profile {
    pub fn new(base: ProfileKind) -> Self {
        Self { base, scale: 1.0, offset: 0.0 }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(ProfileKind::Constant { value })
    }

    pub fn shifted(mut self, offset: f64) -> Self {
        self.offset += offset;
        self
    }

    /// Composes `v -> a * v + b` after this profile.
    pub fn affine(self, a: f64, b: f64) -> Self {
        Self { base: self.base, scale: a * self.scale, offset: a * self.offset + b }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.scale * self.base.eval(x) + self.offset
    }
}

/// A fully parameterized experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub grid: Grid,
    pub cfg: SimConfig,
    /// What a correct run is expected to show.
    pub expected: &'static str,
    /// Parameters not pinned by the experiment itself, filled with defaults.
    pub assumed: Vec<&'static str>,
}

impl Scenario {
    pub fn initial_field(&self) -> Field {
        Field::sample(&self.grid, &self.cfg.initial)
    }

    pub fn with_flux(mut self, law: FluxLaw) -> Self {
        self.cfg.flux = law;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.cfg.alpha = alpha;
        self.assumed.retain(|a| !a.starts_with("alpha"));
        self
    }

    /// Initial data and Dirichlet values mapped through `v -> a v + b`;
    /// prescribed fluxes scale by `a`.
    pub fn affine(mut self, a: f64, b: f64) -> Self {
        self.cfg.initial = self.cfg.initial.affine(a, b);
        let map = |bc: Boundary| match bc {
            Boundary::Dirichlet(v) => Boundary::Dirichlet(a * v + b),
            Boundary::FixedFlux(q) => Boundary::FixedFlux(a * q),
        };
        self.cfg.boundary =
            BoundarySpec { left: map(self.cfg.boundary.left), right: map(self.cfg.boundary.right) };
        self
    }
}

/// Builds a named scenario with the Caputo law; swap the law with
/// [`Scenario::with_flux`].
pub fn make_scenario(name: &str) -> Result<Scenario, SolverError> {
    let grid = Grid::new(DEFAULT_N)?;
    let law = FluxLaw::Caputo;
    let (cfg, expected, assumed) = match name {
        "pulse-reflective" => (
            SimConfig::new(
                DEFAULT_ALPHA,
                DEFAULT_DT,
                10.0,
                law,
                BoundarySpec::reflective(),
                Profile::new(ProfileKind::TriangularPulse),
            )
            .with_snapshots(&[0.0, 0.05, 0.25, 1.0, 5.0, 10.0]),
            "mass stays at 1; Caputo and parsimonious flatten to u = 1, \
             Riemann-Liouville piles mass against x = 0",
            vec!["t_end = 10 and snapshot times"],
        ),
        "ice-warsaw" => (
            SimConfig::new(
                DEFAULT_ALPHA,
                DEFAULT_DT,
                10.0,
                law,
                BoundarySpec::dirichlet(0.0),
                Profile::constant(0.0),
            )
            .with_snapshots(&[0.0, 0.05, 0.5, 2.0, 10.0]),
            "u stays identically 0 under every law",
            vec!["t_end = 10 and snapshot times"],
        ),
        "ice-minneapolis" => (
            SimConfig::new(
                DEFAULT_ALPHA,
                DEFAULT_DT,
                10.0,
                law,
                BoundarySpec::dirichlet(32.0),
                Profile::constant(32.0),
            )
            .with_snapshots(&[0.0, 0.05, 0.5, 2.0, 10.0]),
            "Fourier, Caputo and parsimonious keep u = 32; Riemann-Liouville cools \
             near x = 0 and settles on a curved profile",
            vec!["t_end = 10 and snapshot times"],
        ),
        "fig7-zero" => (
            SimConfig::new(
                DEFAULT_ALPHA,
                DEFAULT_DT,
                0.2,
                law,
                BoundarySpec::dirichlet(0.0),
                Profile::new(ProfileKind::Fig7Bump),
            )
            .with_snapshots(&[0.01, 0.04, 0.2]),
            "Riemann-Liouville and Caputo snapshots coincide",
            vec!["alpha = 0.5", "n = 100, dt = 0.0005"],
        ),
        "fig7-shifted" => (
            SimConfig::new(
                DEFAULT_ALPHA,
                DEFAULT_DT,
                0.2,
                law,
                BoundarySpec::dirichlet(5.0),
                Profile::new(ProfileKind::Fig7Bump).shifted(5.0),
            )
            .with_snapshots(&[0.01, 0.04, 0.2]),
            "Caputo equals fig7-zero plus 5; Riemann-Liouville dips below 5",
            vec!["alpha = 0.5", "n = 100, dt = 0.0005"],
        ),
        other => {
            return Err(SolverError::Config(format!(
                "unknown scenario '{other}'; valid names: {}",
                SCENARIO_NAMES.join(", ")
            )))
        }
    };
    Ok(Scenario { name: name.to_string(), grid, cfg, expected, assumed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::total_mass;

    #[test]
    fn pulse_values() {
        assert_eq!(triangular_pulse(0.5), 5.0);
        assert_eq!(triangular_pulse(0.3), 0.0);
        assert_eq!(triangular_pulse(0.2), 0.0);
        assert_eq!(triangular_pulse(0.7), 0.0);
        assert!((triangular_pulse(0.4) - 2.5).abs() < 1e-15);
        assert!((triangular_pulse(0.6) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn bump_values() {
        assert_eq!(fig7_bump(0.5), 0.0);
        assert_eq!(fig7_bump(0.25), 0.0);
        assert_eq!(fig7_bump(0.0), 0.0);
        assert!(fig7_bump(0.1) > 0.0);
    }

    #[test]
    fn every_named_scenario_is_consistent() {
        for name in SCENARIO_NAMES {
            let s = make_scenario(name).unwrap();
            s.cfg.validate().unwrap();
            let u = s.initial_field().u;
            if let Boundary::Dirichlet(v) = s.cfg.boundary.left {
                assert!((u[0] - v).abs() < 1e-12, "{name}");
            }
            if let Boundary::Dirichlet(v) = s.cfg.boundary.right {
                assert!((u[s.grid.n()] - v).abs() < 1e-12, "{name}");
            }
        }
    }

    #[test]
    fn unknown_name_lists_choices() {
        let err = make_scenario("ice-paris").unwrap_err().to_string();
        for name in SCENARIO_NAMES {
            assert!(err.contains(name));
        }
    }

    #[test]
    fn pulse_mass_is_one_on_the_grid() {
        let s = make_scenario("pulse-reflective").unwrap();
        let m = total_mass(&s.initial_field().u, &s.grid);
        assert!((m - 1.0).abs() < 1e-12, "{m}");
    }

    #[test]
    fn affine_profile_composes() {
        let p = Profile::new(ProfileKind::Fig7Bump).shifted(5.0).affine(2.0, 1.0);
        let x = 0.1;
        assert!((p.eval(x) - (2.0 * (fig7_bump(x) + 5.0) + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn profile_json_shape() {
        let p = Profile::new(ProfileKind::Constant { value: 32.0 });
        let json = serde_json::to_value(p).unwrap();
        assert_eq!(json["kind"], "constant");
        assert_eq!(json["value"], 32.0);
        let back: Profile = serde_json::from_str(r#"{"kind":"fig7_bump","offset":5.0}"#).unwrap();
        assert_eq!(back, Profile::new(ProfileKind::Fig7Bump).shifted(5.0));
    }

    #[test]
    fn with_alpha_clears_assumption() {
        let s = make_scenario("fig7-zero").unwrap().with_alpha(0.7);
        assert_eq!(s.cfg.alpha, 0.7);
        assert!(s.assumed.iter().all(|a| !a.starts_with("alpha")));
    }
}

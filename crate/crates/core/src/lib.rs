//! Conservative control-volume solver for the 1-D space-fractional diffusion
//! equation `u_t + q_x = 0` on `[0, 1]`.
//!
//! The flux `q` is pluggable ([`FluxLaw`]): classical Fourier, Riemann-Liouville
//! and Caputo fractional fluxes built from shifted Grünwald weights, and the
//! parsimonious flux (Riemann-Liouville of `u - u(0)`). The march is the same
//! for every law, so mass is conserved exactly under fixed-flux boundaries.
//!
//! ```
//! use fracflux::{make_scenario, run, FluxLaw};
//!
//! let s = make_scenario("fig7-zero").unwrap().with_flux(FluxLaw::RiemannLiouville);
//! let result = run(&s.cfg, &s.grid, s.initial_field()).unwrap();
//! assert_eq!(result.snapshots.len(), 3);
//! ```

pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod flux;
pub mod scenarios;
pub mod solver;
pub mod weights;

pub use diagnostics::{
    equivariance_test, max_principle_check, steady_state_time, total_mass, DiagnosticTrace,
    EquivarianceReport, MaxPrincipleReport,
};
pub use error::{DomainError, SolverError};
pub use flux::{
    caputo_faces, fourier_faces, parsimonious_faces, rl_faces_grunwald, rl_faces_weighted,
    Decomposition, FaceFluxes, FluxLaw,
};
pub use scenarios::{make_scenario, Profile, ProfileKind, Scenario, SCENARIO_NAMES};
pub use solver::{run, stability_ratio, step, Boundary, BoundarySpec, Field, Grid, RunResult, SimConfig};
pub use weights::GrunwaldTable;

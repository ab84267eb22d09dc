//! Discrete fluxes at the interior control-volume faces.
//!
//! Face `i` sits at `x = (i + 0.5) * dx` for `i = 0..n`, so a field with
//! `n + 1` nodes produces exactly `n` face values. Boundary faces at `x = 0`
//! and `x = 1` are never produced here; the solver supplies them from the
//! boundary conditions.
//!
//! Sign convention: every law returns the flux `q`, i.e. the minus sign of
//! `q = -du/dx` (or its fractional analogue) is already folded in. A field
//! falling to the right therefore gives positive face values.
//!
//! All sums run left to right in `j`, so results are deterministic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DomainError;
use crate::weights::GrunwaldTable;

/// Which constitutive law turns the nodal field into face fluxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FluxLaw {
    /// Classical gradient flux, central difference.
    Fourier,
    /// Riemann-Liouville fractional flux in weighted-gradient form.
    #[serde(rename = "rl")]
    #[value(name = "rl")]
    RiemannLiouville,
    /// Caputo fractional flux: weighted sum of the Fourier fluxes at and to
    /// the left of the face.
    Caputo,
    /// Riemann-Liouville flux of `u - u(0)`.
    Parsimonious,
}

impl FluxLaw {
    pub const ALL: [FluxLaw; 4] =
        [FluxLaw::Fourier, FluxLaw::RiemannLiouville, FluxLaw::Caputo, FluxLaw::Parsimonious];

    pub fn as_str(self) -> &'static str {
        match self {
            FluxLaw::Fourier => "fourier",
            FluxLaw::RiemannLiouville => "rl",
            FluxLaw::Caputo => "caputo",
            FluxLaw::Parsimonious => "parsimonious",
        }
    }

    /// Face fluxes of `u` under this law.
    pub fn faces(self, u: &[f64], table: &GrunwaldTable) -> Result<FaceFluxes, DomainError> {
        match self {
            FluxLaw::Fourier => {
                check_len(u, table)?;
                fourier_faces(u, table.dx())
            }
            FluxLaw::RiemannLiouville => rl_faces_weighted(u, table),
            FluxLaw::Caputo => caputo_faces(u, table),
            FluxLaw::Parsimonious => parsimonious_faces(u, table),
        }
    }
}

impl fmt::Display for FluxLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FluxLaw {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FluxLaw::ALL
            .into_iter()
            .find(|law| law.as_str() == s)
            .ok_or_else(|| format!("unknown flux law '{s}' (expected fourier, rl, caputo or parsimonious)"))
    }
}

/// Split of the Riemann-Liouville face flux into the weighted-gradient part
/// and the term driven by the left boundary value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub diffusive: Vec<f64>,
    pub advective: Vec<f64>,
}

/// Flux at each of the `n` interior faces.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceFluxes {
    pub q: Vec<f64>,
    /// Present only for the weighted Riemann-Liouville evaluation.
    pub decomposition: Option<Decomposition>,
}

impl FaceFluxes {
    fn plain(q: Vec<f64>) -> Self {
        Self { q, decomposition: None }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn scale(&mut self, factor: f64) {
        self.q.iter_mut().for_each(|q| *q *= factor);
        if let Some(d) = &mut self.decomposition {
            d.diffusive.iter_mut().for_each(|q| *q *= factor);
            d.advective.iter_mut().for_each(|q| *q *= factor);
        }
    }
}

fn check_len(u: &[f64], table: &GrunwaldTable) -> Result<(), DomainError> {
    if u.len() != table.n() + 1 {
        return Err(DomainError::SizeMismatch { field: u.len(), table: table.n() + 1 });
    }
    Ok(())
}

/// `q[i] = (u[i] - u[i+1]) / dx`.
pub fn fourier_faces(u: &[f64], dx: f64) -> Result<FaceFluxes, DomainError> {
    if u.len() < 2 {
        return Err(DomainError::TooFewNodes(u.len()));
    }
    if !(dx > 0.0 && dx.is_finite()) {
        return Err(DomainError::Spacing(dx));
    }
    Ok(FaceFluxes::plain(u.windows(2).map(|p| (p[0] - p[1]) / dx).collect()))
}

/// Shifted Grünwald form: `q[i] = -dx^(-alpha) * sum_{j=0..=i+1} g_j u[i+1-j]`.
pub fn rl_faces_grunwald(u: &[f64], table: &GrunwaldTable) -> Result<FaceFluxes, DomainError> {
    check_len(u, table)?;
    let g = table.g();
    let factor = -table.dx().powf(-table.alpha());
    let q = (0..table.n())
        .map(|i| {
            let s = (0..=i + 1).fold(0.0, |acc, j| acc + g[j] * u[i + 1 - j]);
            factor * s
        })
        .collect();
    Ok(FaceFluxes::plain(q))
}

/// `sum_{j=0..=i} W_j (u[i-j] - u[i+1-j]) / dx` for every face.
fn weighted_gradient(u: &[f64], table: &GrunwaldTable) -> Vec<f64> {
    let w = table.w();
    let dx = table.dx();
    (0..table.n())
        .map(|i| (0..=i).fold(0.0, |acc, j| acc + w[j] * (u[i - j] - u[i + 1 - j]) / dx))
        .collect()
}

/// Weighted-gradient Riemann-Liouville form with the boundary term kept
/// separately: `q[i] = diffusive[i] + advective[i]`,
/// `advective[i] = -(W_{i+1} / dx) * u[0]`.
pub fn rl_faces_weighted(u: &[f64], table: &GrunwaldTable) -> Result<FaceFluxes, DomainError> {
    check_len(u, table)?;
    let diffusive = weighted_gradient(u, table);
    let w = table.w();
    let dx = table.dx();
    let advective: Vec<f64> = (0..table.n()).map(|i| -(w[i + 1] / dx) * u[0]).collect();
    let q = diffusive.iter().zip(&advective).map(|(d, a)| d + a).collect();
    Ok(FaceFluxes { q, decomposition: Some(Decomposition { diffusive, advective }) })
}

/// Caputo flux: the weighted-gradient sum alone.
pub fn caputo_faces(u: &[f64], table: &GrunwaldTable) -> Result<FaceFluxes, DomainError> {
    check_len(u, table)?;
    Ok(FaceFluxes::plain(weighted_gradient(u, table)))
}

/// Riemann-Liouville flux of the shifted field `u - u[0]`.
pub fn parsimonious_faces(u: &[f64], table: &GrunwaldTable) -> Result<FaceFluxes, DomainError> {
    check_len(u, table)?;
    let u0 = u[0];
    let shifted: Vec<f64> = u.iter().map(|v| v - u0).collect();
    rl_faces_weighted(&shifted, table)
}

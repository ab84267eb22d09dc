//! Prescribed boundary fluxes: the mass changes by exactly dt * (q_in - q_out)
//! per step, whatever the law.

use fracflux::{run, Boundary, BoundarySpec, Field, FluxLaw, Grid, Profile, ProfileKind, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Grid::new(64)?;
    let (q_in, q_out) = (0.3, -0.2);
    let boundary = BoundarySpec { left: Boundary::FixedFlux(q_in), right: Boundary::FixedFlux(q_out) };
    let profile = Profile::new(ProfileKind::TriangularPulse);
    for law in [FluxLaw::RiemannLiouville, FluxLaw::Caputo, FluxLaw::Parsimonious] {
        let cfg = SimConfig::new(0.6, 5e-5, 0.5, law, boundary, profile);
        let r = run(&cfg, &grid, Field::sample(&grid, &profile))?;
        let worst = r
            .trace
            .records
            .windows(2)
            .map(|w| (w[1].mass - w[0].mass - cfg.dt * (q_in - q_out)).abs())
            .fold(0.0_f64, f64::max);
        let last = r.trace.last().unwrap();
        println!("{law}: M(t = {}) = {:.12}, worst per-step balance error {worst:.1e}", last.t, last.mass);
    }
    Ok(())
}

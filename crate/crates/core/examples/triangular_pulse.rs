//! Unit-mass pulse between reflective walls: Caputo flattens to u = 1 while
//! Riemann-Liouville piles mass against x = 0. Mass is tracked every step.

use fracflux::{make_scenario, run, FluxLaw};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for law in [FluxLaw::Caputo, FluxLaw::Parsimonious, FluxLaw::RiemannLiouville] {
        let s = make_scenario("pulse-reflective")?.with_flux(law);
        let r = run(&s.cfg, &s.grid, s.initial_field())?;
        println!("{law}: mass drift {:.1e}", r.trace.max_mass_drift());
        for f in &r.snapshots {
            println!("  t = {:>5}: u(0) = {:8.4}  u(0.5) = {:8.4}  u(1) = {:8.4}", f.t, f.u[0], f.u[50], f.u[100]);
        }
    }
    Ok(())
}

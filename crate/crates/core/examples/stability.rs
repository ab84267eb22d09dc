//! The stability ratio dt / dx^(1 + alpha) and what happens past it.

use fracflux::{make_scenario, run, stability_ratio, FluxLaw, SolverError};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = make_scenario("pulse-reflective")?;
    for law in [FluxLaw::Caputo, FluxLaw::Fourier] {
        let cfg = &s.clone().with_flux(law).cfg;
        println!("{law}: ratio {:.3}", stability_ratio(cfg, &s.grid));
    }
    let fourier = s.with_flux(FluxLaw::Fourier);
    match run(&fourier.cfg, &fourier.grid, fourier.initial_field()) {
        Err(SolverError::Unstable { step, t, reason }) => println!("fourier aborted at step {step} (t = {t}): {reason}"),
        Err(e) => return Err(e.into()),
        Ok(_) => println!("fourier finished"),
    }
    Ok(())
}

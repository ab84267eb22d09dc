//! Runs a scenario and its image under v -> a v + b and reports how far the
//! mapped run drifts from the mapped original.

use fracflux::{equivariance_test, make_scenario, FluxLaw};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fig7 = make_scenario("fig7-zero")?;
    let ice = make_scenario("ice-warsaw")?;
    let cases = [
        (&fig7, FluxLaw::Caputo, 2.0, 5.0),
        (&fig7, FluxLaw::Parsimonious, -1.0, 3.0),
        (&fig7, FluxLaw::RiemannLiouville, 2.0, 0.0),
        (&fig7, FluxLaw::RiemannLiouville, 1.0, 5.0),
        (&ice, FluxLaw::Fourier, 1.0, 32.0),
        (&ice, FluxLaw::RiemannLiouville, 1.0, 32.0),
    ];
    for (s, law, a, b) in cases {
        let r = equivariance_test(s, law, a, b)?;
        println!("{:>11} {:>13} a = {a:>4} b = {b:>4}: max deviation {:.3e}", s.name, law.as_str(), r.max_deviation);
    }
    Ok(())
}

//! Two uniform domains differing only by a constant. Laws that see gradients
//! only keep the warmer one uniform; Riemann-Liouville does not.

use fracflux::{make_scenario, run, FluxLaw};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["ice-warsaw", "ice-minneapolis"] {
        for law in FluxLaw::ALL {
            let s = make_scenario(name)?.with_flux(law);
            let r = run(&s.cfg, &s.grid, s.initial_field())?;
            let u = &r.final_field.u;
            let (lo, hi) = u.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            println!("{name:>16} {:>13}: t = {:>4}, min {lo:9.4}, max {hi:9.4}", law.as_str(), r.final_field.t);
        }
    }
    Ok(())
}

//! Face fluxes of one field under each law, with the Riemann-Liouville split
//! into a Caputo-like diffusive part and a boundary-driven advective part.

use fracflux::{rl_faces_grunwald, FluxLaw, GrunwaldTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 10;
    let dx = 1.0 / n as f64;
    let u: Vec<f64> = (0..=n).map(|i| 3.0 + (i as f64 * dx * std::f64::consts::PI).sin()).collect();
    let table = GrunwaldTable::build(0.5, dx, n)?;

    for law in FluxLaw::ALL {
        let q = law.faces(&u, &table)?;
        let shown: Vec<String> = q.q.iter().map(|v| format!("{v:8.4}")).collect();
        println!("{:>13}: {}", law.as_str(), shown.join(" "));
    }

    let rl = FluxLaw::RiemannLiouville.faces(&u, &table)?;
    let d = rl.decomposition.expect("rl carries its split");
    let grunwald = rl_faces_grunwald(&u, &table)?;
    println!("advective part: {:?}", d.advective.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>());
    let gap = rl.q.iter().zip(&grunwald.q).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    println!("weighted vs grunwald form: max difference {gap:.1e}");
    Ok(())
}

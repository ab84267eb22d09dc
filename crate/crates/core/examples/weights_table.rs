//! Prints the shifted Grünwald coefficients and cumulative weights.
//!
//! cargo run --example weights_table -- 0.5 8

use fracflux::GrunwaldTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(Ok(0.5), |s| s.parse())?;
    let n: usize = args.next().map_or(Ok(8), |s| s.parse())?;
    let table = GrunwaldTable::build(alpha, 1.0 / n as f64, n)?;

    println!("alpha = {alpha}, dx = {}", table.dx());
    println!("{:>4} {:>22} {:>22}", "j", "g_j", "W_j");
    for (j, (g, w)) in table.g().iter().zip(table.w()).enumerate() {
        println!("{j:>4} {g:>22.15e} {w:>22.15e}");
    }
    Ok(())
}

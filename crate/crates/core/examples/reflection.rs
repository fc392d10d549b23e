//! Checks the eta reflection formula across the critical strip.

use eta_strings::{reflection_residual, EtaArgument, PrecisionSpec};

fn main() -> eta_strings::Result<()> {
    let spec = PrecisionSpec::accelerated(12.0);
    let mut worst: f64 = 0.0;
    for &sigma in &[0.1, 0.25, 0.5, 0.75, 0.9] {
        for &t in &[0.5, 3.0, 14.134725, 37.0, 80.0] {
            let r = reflection_residual(EtaArgument::new(sigma, t)?, &spec)?;
            worst = worst.max(r);
            println!("sigma {sigma:<5} t {t:<10} residual {r:.2e}");
        }
    }
    println!("largest residual {worst:.2e}");
    Ok(())
}

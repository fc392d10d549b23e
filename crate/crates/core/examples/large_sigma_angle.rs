//! For large sigma the n = 2 term dominates and each string is a short
//! straight segment pointing at 1; compares its direction with arg(-2^-ti).

use eta_strings::geometry::{angle_about_one, large_sigma_angle};
use eta_strings::strings::{build_family, SigmaGrid};
use eta_strings::PrecisionSpec;

fn main() -> eta_strings::Result<()> {
    let grid = SigmaGrid::new(9.0, 10.0, 0.1)?;
    let family = build_family(22.0, 28.0, 1.0, &grid, &PrecisionSpec::accelerated(12.0))?;
    println!("{:>4} {:>10} {:>10} {:>10}", "t", "sigma=9", "sigma=10", "limit");
    for s in &family.strings {
        let first = s.samples().first().unwrap().value;
        let last = s.samples().last().unwrap().value;
        println!(
            "{:>4} {:>10.4} {:>10.4} {:>10.4}",
            s.t,
            angle_about_one(first),
            angle_about_one(last),
            large_sigma_angle(s.t)
        );
    }
    Ok(())
}

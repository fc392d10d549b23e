//! Finds the small loop on the t = 357.612 string and the self-crossings of a
//! few neighbours.

use eta_strings::geometry::{arc_length, self_crossings};
use eta_strings::strings::{build_string, SigmaGrid};
use eta_strings::PrecisionSpec;

fn main() -> eta_strings::Result<()> {
    let grid = SigmaGrid::new(0.4, 1.5, 0.01)?;
    let spec = PrecisionSpec::default();
    for t in [357.596, 357.604, 357.612, 357.62] {
        let s = build_string(t, &grid, &spec)?;
        let xs = self_crossings(&s, 0.0);
        println!("t = {t}: length {:.4}, {} crossing(s)", arc_length(&s), xs.len());
        for x in xs {
            println!(
                "    sigma {:.5} meets sigma {:.5} at ({:.6}, {:.6})",
                x.sigma_pair.0, x.sigma_pair.1, x.point.re, x.point.im
            );
        }
    }
    Ok(())
}

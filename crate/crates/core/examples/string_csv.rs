//! One t string as CSV on stdout; the 25th dot of the t = 14.134725 string sits on the origin.
//!
//!     cargo run --release --example string_csv -- 14.134725 > first_zero.csv

use eta_strings::geometry::{arc_length, nearest_approach};
use eta_strings::render::write_csv;
use eta_strings::strings::{build_string, SigmaGrid};
use eta_strings::PrecisionSpec;

fn main() -> eta_strings::Result<()> {
    let t: f64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(14.134725);
    let grid = SigmaGrid::new(0.02, 0.98, 0.02)?;
    let string = build_string(t, &grid, &PrecisionSpec::accelerated(10.0))?;

    let (sigma, dist) = nearest_approach(&string);
    eprintln!("t = {t}: {} samples, arc length {:.6}", string.len(), arc_length(&string));
    eprintln!("closest to the origin at sigma = {sigma:.2}, |eta| = {dist:.3e}");

    write_csv(std::slice::from_ref(&string), std::io::stdout().lock())
}

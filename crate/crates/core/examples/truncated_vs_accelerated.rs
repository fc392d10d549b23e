//! Where the raw truncated series (length chosen from sigma alone) departs
//! from the accelerated evaluation.

use eta_strings::{eta, truncation_length, EtaArgument, PrecisionSpec};

fn main() -> eta_strings::Result<()> {
    let truncated = PrecisionSpec::truncated(3.0);
    let reference = PrecisionSpec::accelerated(10.0);
    println!("{:>6} {:>6} {:>9} {:>10} {:>10}", "sigma", "t", "terms", "|diff|", "bound");
    for &sigma in &[0.5, 1.0, 1.5, 2.5, 4.0, 7.0] {
        for &t in &[0.0, 30.0, 60.0, 120.0] {
            let s = EtaArgument::new(sigma, t)?;
            let d = (eta(s, &truncated)? - eta(s, &reference)?).norm();
            let bound = 1e-3 * 2f64.powf(-sigma);
            let n = truncation_length(sigma, 3.0)?.n_terms;
            let flag = if d > bound { "  over" } else { "" };
            println!("{sigma:>6} {t:>6} {n:>9} {d:>10.2e} {bound:>10.2e}{flag}");
        }
    }
    Ok(())
}

//! Scans sigma = 1/2 and sigma = 1 for zeros and sorts them into nontrivial
//! zeta zeros and the extra zeros eta picks up from 1 - 2^(1-s).
//!
//!     cargo run --release --example zero_census -- 0 70

use eta_strings::zeros::{scan_zeros, verify_modified_reflection, ScanConfig, ZeroKind};

fn main() -> eta_strings::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = match args[..] {
        [a, b, ..] => (a, b),
        _ => (0.0, 70.0),
    };
    let config = ScanConfig::new(lo, hi, 0.1)?;
    let zeros = scan_zeros(&config)?;

    println!("{:>18}  {:<12} {:>5}  {:>10}  {:>10}", "t", "kind", "sigma", "|eta|", "|eta(1-s)|");
    for z in &zeros {
        let mirror = verify_modified_reflection(z, &config.spec)?;
        let label = match (z.kind, z.k) {
            (ZeroKind::TrivialEta, Some(k)) => format!("trivial k={k}"),
            _ => z.kind.to_string(),
        };
        println!(
            "{:>18.12}  {:<12} {:>5}  {:>10.2e}  {:>10.2e}",
            z.t, label, z.sigma, z.residual, mirror
        );
    }
    let nontrivial = zeros.iter().filter(|z| z.kind == ZeroKind::NonTrivial).count();
    println!("{nontrivial} nontrivial, {} trivial", zeros.len() - nontrivial);
    Ok(())
}

//! Eta and zeta at a few points, with both summation strategies.
//!
//!     cargo run --release --example eval_point -- 0.5 14.134725

use eta_strings::{eta, zeta_from_eta, EtaArgument, PrecisionSpec};

fn main() -> eta_strings::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (sigma, t) = match args[..] {
        [s, t, ..] => (s, t),
        _ => (0.5, 14.134725),
    };
    let s = EtaArgument::new(sigma, t)?;

    for p in [3.0, 6.0, 12.0] {
        let v = eta(s, &PrecisionSpec::accelerated(p))?;
        println!("accelerated p={p:<4} eta({sigma} + {t}i) = {:+.12e} {:+.12e}i", v.re, v.im);
    }
    if sigma > 0.0 {
        let v = eta(s, &PrecisionSpec::truncated(3.0))?;
        println!("truncated   p=3    eta({sigma} + {t}i) = {:+.12e} {:+.12e}i", v.re, v.im);
    }
    match zeta_from_eta(s, &PrecisionSpec::accelerated(12.0)) {
        Ok(z) => println!("zeta({sigma} + {t}i) = {:+.12e} {:+.12e}i", z.re, z.im),
        Err(e) => println!("zeta({sigma} + {t}i): {e}"),
    }
    Ok(())
}

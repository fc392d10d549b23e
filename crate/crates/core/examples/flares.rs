//! Parallel and radial flares: fits a line to each windowed string and
//! looks for a common direction or a common point.

use eta_strings::geometry::{classify_flare, FlareReport, SigmaWindow};
use eta_strings::strings::{build_family, SigmaGrid};
use eta_strings::PrecisionSpec;

fn show(label: &str, r: &FlareReport) {
    print!("{label:<40} {:<8} spread {:>7.2} deg", r.kind.to_string(), r.spread_deg);
    if let Some(d) = r.direction {
        print!("  direction {d:.2} deg");
    }
    if let Some(c) = r.center {
        print!("  center ({:.6}, {:.6})", c.re, c.im);
    }
    if let Some(q) = r.concurrency_ratio {
        print!("  ratio {q:.4}");
    }
    println!();
}

fn main() -> eta_strings::Result<()> {
    let spec = PrecisionSpec::default();
    let cases = [
        ("t 111.03..111.87, sigma 4..7", (111.0295, 111.8746, 0.0939), (4.0, 7.0, 0.02)),
        ("t 22..28, sigma 9..10", (22.0, 28.0, 1.0), (9.0, 10.0, 0.1)),
        ("t 111.03..111.87, sigma 0.4..0.5", (111.0295, 111.8746, 0.0939), (0.4, 0.5, 0.01)),
        ("t 357.15..357.95, sigma 0.4..1.5", (357.151, 357.952, 0.089), (0.4, 1.5, 0.01)),
    ];
    for (label, t, s) in cases {
        let grid = SigmaGrid::new(s.0, s.1, s.2)?;
        let family = build_family(t.0, t.1, t.2, &grid, &spec)?;
        let window = SigmaWindow::new(s.0, s.1)?;
        show(label, &classify_flare(&family.strings, &window)?);
    }
    Ok(())
}

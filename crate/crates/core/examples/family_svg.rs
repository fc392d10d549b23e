//! Renders a string family as SVG (equal axes, one dot per sample).
//!
//!     cargo run --release --example family_svg -- out.svg

use eta_strings::render::{render_to_file, OutputFormat, RenderSpec};
use eta_strings::strings::{build_family, SigmaGrid};
use eta_strings::PrecisionSpec;
use std::path::PathBuf;

fn main() -> eta_strings::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("family_19_21.svg"));

    // eleven strings, 21 dots each
    let grid = SigmaGrid::new(0.0, 1.0, 0.05)?;
    let family = build_family(19.0, 21.0, 0.2, &grid, &PrecisionSpec::default())?;

    let spec = RenderSpec {
        format: OutputFormat::Svg,
        ..RenderSpec::default()
    };
    render_to_file(&family.strings, &spec, Some("t 19..21, sigma 0..1"), &out)?;
    println!("{} strings x {} points -> {}", family.len(), grid.len(), out.display());
    Ok(())
}

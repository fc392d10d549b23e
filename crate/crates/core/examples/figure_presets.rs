//! Writes preset figures as SVG through an on-disk cache; the second pass is
//! served from the cache.
//!
//!     cargo run --release --example figure_presets -- 9 15 17

use eta_strings::cache::Cache;
use eta_strings::figures::preset;
use eta_strings::render::{render_to_file, OutputFormat, RenderSpec};
use eta_strings::PrecisionSpec;
use std::time::Instant;

fn main() -> eta_strings::Result<()> {
    let mut ids: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if ids.is_empty() {
        ids = vec![1, 3, 9, 15, 17];
    }
    let dir = std::env::temp_dir().join("eta-figures");
    let cache = Cache::new(dir.join("cache"))?;
    let spec = RenderSpec {
        format: OutputFormat::Svg,
        ..RenderSpec::default()
    };
    for pass in 1..=2 {
        for &id in &ids {
            let p = preset(id)?;
            let start = Instant::now();
            let family = p.build(&PrecisionSpec::default(), Some(&cache))?;
            let path = dir.join(format!("figure-{id:02}.svg"));
            render_to_file(&family.strings, &spec, Some(p.title), &path)?;
            println!("pass {pass} figure {id:>2} {:>8.1?} {}", start.elapsed(), path.display());
        }
    }
    Ok(())
}

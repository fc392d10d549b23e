//! Named presets for the string figures: a t range, a sigma grid, and
//! optionally a fixed series length instead of the full eta evaluation.

use crate::cache::{cached, Cache};
use crate::error::{Error, Result};
use crate::eta::{PrecisionSpec, TruncationPlan};
use crate::strings::{build_family, build_family_fixed_terms, SigmaGrid, StringFamily};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub id: u32,
    pub title: &'static str,
    /// `(start, stop, step)`
    pub t: (f64, f64, f64),
    pub sigma: (f64, f64, f64),
    /// Sum exactly this many terms at every point.
    pub fixed_terms: Option<u64>,
}

const T111: (f64, f64, f64) = (111.0295, 111.8746, 0.0939);
const T357: (f64, f64, f64) = (357.151, 357.952, 0.089);
const T22: (f64, f64, f64) = (22.0, 28.0, 1.0);

const fn fig(id: u32, title: &'static str, t: (f64, f64, f64), sigma: (f64, f64, f64)) -> FigurePreset {
    FigurePreset {
        id,
        title,
        t,
        sigma,
        fixed_terms: None,
    }
}

const fn sum(
    id: u32,
    title: &'static str,
    t: (f64, f64, f64),
    sigma: (f64, f64, f64),
    n: u64,
) -> FigurePreset {
    FigurePreset {
        id,
        title,
        t,
        sigma,
        fixed_terms: Some(n),
    }
}

pub const PRESETS: [FigurePreset; 30] = [
    fig(1, "t 19..21 step 0.2", (19.0, 21.0, 0.2), (0.0, 1.0, 0.05)),
    fig(2, "second zero", (21.022039639, 21.022039639, 1.0), (0.0, 1.0, 0.05)),
    fig(3, "t 1..14", (1.0, 14.0, 1.0), (0.02, 0.98, 0.02)),
    fig(4, "t 14 and first zero", (14.0, 14.134725, 0.134725), (0.02, 0.98, 0.02)),
    fig(6, "t 21..23 step 0.2", (21.0, 23.0, 0.2), (0.0, 1.0, 0.05)),
    fig(7, "t 24..26 step 0.2", (24.0, 26.0, 0.2), (0.0, 1.0, 0.05)),
    fig(8, "t 55..56.4 step 0.2", (55.0, 56.4, 0.2), (0.0, 1.0, 0.05)),
    fig(9, "t 22..28, sigma 9..10", T22, (9.0, 10.0, 0.1)),
    fig(10, "t 22..28, sigma 19..20", T22, (19.0, 20.0, 0.1)),
    fig(11, "t 22..28, sigma 1.5..4", T22, (1.5, 4.0, 0.1)),
    fig(12, "t 22..28, sigma 0.5..1.5", T22, (0.5, 1.5, 0.1)),
    fig(13, "t 22..28, sigma 1..2", T22, (1.0, 2.0, 0.1)),
    fig(14, "t 22..28, sigma 0..4", T22, (0.0, 4.0, 0.1)),
    fig(15, "between zeros near 111, sigma 4..7", T111, (4.0, 7.0, 0.02)),
    fig(16, "between zeros near 111, sigma 1.5..4", T111, (1.5, 4.0, 0.02)),
    fig(17, "between zeros near 111, sigma 0.4..1.5", T111, (0.4, 1.5, 0.01)),
    sum(18, "12-term sum near 111, sigma 4..7", T111, (4.0, 7.0, 0.01), 12),
    sum(19, "200-term sum near 111, sigma 1.5..4", T111, (1.5, 4.0, 0.01), 200),
    sum(20, "2e6-term sum near 111, sigma 0.4..1.5", T111, (0.4, 1.5, 0.01), 2_000_000),
    fig(21, "between zeros near 111, sigma 0..0.5", T111, (0.0, 0.5, 0.01)),
    fig(22, "between zeros near 111, sigma 0..0.7", T111, (0.0, 0.7, 0.01)),
    fig(23, "between zeros near 357, sigma 4..7", T357, (4.0, 7.0, 0.02)),
    sum(24, "12-term sum near 357, sigma 4..7", T357, (4.0, 7.0, 0.01), 12),
    fig(25, "between zeros near 357, sigma 1.5..4", T357, (1.5, 4.0, 0.01)),
    sum(26, "200-term sum near 357, sigma 1.5..4", T357, (1.5, 4.0, 0.01), 200),
    fig(27, "between zeros near 357, sigma 0.4..1.5", T357, (0.4, 1.5, 0.01)),
    sum(28, "2e6-term sum near 357, sigma 0.4..1.5", T357, (0.4, 1.5, 0.01), 2_000_000),
    fig(29, "U-turn at t = 357.596", (357.596, 357.596, 1.0), (0.4, 1.5, 0.01)),
    fig(30, "loop at t = 357.612", (357.612, 357.612, 1.0), (0.4, 1.5, 0.01)),
    fig(31, "between zeros near 357, sigma 0..0.7", T357, (0.0, 0.7, 0.01)),
];

pub fn preset(id: u32) -> Result<&'static FigurePreset> {
    PRESETS.iter().find(|p| p.id == id).ok_or_else(|| {
        Error::Usage(format!(
            "no preset for figure {id}; available: 1-4, 6-31"
        ))
    })
}

impl FigurePreset {
    pub fn grid(&self) -> Result<SigmaGrid> {
        SigmaGrid::new(self.sigma.0, self.sigma.1, self.sigma.2)
    }

    /// Builds the preset's family, going through `cache` when given.
    pub fn build(&self, spec: &PrecisionSpec, cache: Option<&Cache>) -> Result<StringFamily> {
        let grid = self.grid()?;
        let (a, b, c) = self.t;
        match self.fixed_terms {
            None => family_cached(cache, (a, b, c), &grid, spec),
            Some(n) => {
                let plan = TruncationPlan::new(n)?;
                fixed_family_cached(cache, (a, b, c), &grid, plan, spec.compensated_phase)
            }
        }
    }
}

pub fn family_cached(
    cache: Option<&Cache>,
    t: (f64, f64, f64),
    grid: &SigmaGrid,
    spec: &PrecisionSpec,
) -> Result<StringFamily> {
    let args = json!({"t": [t.0, t.1, t.2], "sigma": [grid.start, grid.stop, grid.step]});
    cached(cache, "family", &args, Some(spec), || {
        build_family(t.0, t.1, t.2, grid, spec)
    })
}

pub fn fixed_family_cached(
    cache: Option<&Cache>,
    t: (f64, f64, f64),
    grid: &SigmaGrid,
    plan: TruncationPlan,
    compensated_phase: bool,
) -> Result<StringFamily> {
    let args = json!({
        "t": [t.0, t.1, t.2],
        "sigma": [grid.start, grid.stop, grid.step],
        "terms": plan.n_terms,
        "compensated_phase": compensated_phase,
    });
    cached(cache, "family-fixed-terms", &args, None, || {
        build_family_fixed_terms(t.0, t.1, t.2, grid, plan, compensated_phase)
    })
}

//! t strings: eta sampled along a uniform sigma grid at fixed t, and families of them.

use crate::error::{Error, Result};
use crate::eta::{eta, eta_truncated, ComplexValue, EtaArgument, PrecisionSpec, TruncationPlan};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Relative slack (in units of `step`) when deciding whether `stop` is on the grid.
const ENDPOINT_SLACK: f64 = 1e-9;

/// Number of points `start, start + step, ...` not exceeding `stop` (with slack).
pub fn grid_count(start: f64, stop: f64, step: f64) -> usize {
    ((stop - start) / step + ENDPOINT_SLACK).floor() as usize + 1
}

fn check_range(what: &str, start: f64, stop: f64, step: f64) -> Result<()> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::Domain(format!("{what}: non-finite range")));
    }
    if !(step > 0.0) {
        return Err(Error::Domain(format!("{what}: step {step} must be positive")));
    }
    if stop < start {
        return Err(Error::Domain(format!("{what}: stop {stop} is below start {start}")));
    }
    Ok(())
}

/// Uniform sigma grid `{sigma, start, stop, step}`; point `k` is `start + k * step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SigmaGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        check_range("sigma grid", start, stop, step)?;
        if start < 0.0 {
            return Err(Error::Domain(format!("sigma grid starts below zero ({start})")));
        }
        Ok(SigmaGrid { start, stop, step })
    }

    pub fn len(&self) -> usize {
        grid_count(self.start, self.stop, self.step)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub sigma: f64,
    pub value: ComplexValue,
}

/// Eta values along increasing sigma at one fixed `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TString {
    pub t: f64,
    samples: Vec<Sample>,
}

impl TString {
    /// Builds a string from precomputed samples; sigma must be strictly increasing.
    pub fn from_samples(t: f64, samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("a t string needs at least one sample".into()));
        }
        if samples.windows(2).any(|w| !(w[1].sigma > w[0].sigma)) {
            return Err(Error::Domain("sigma values must be strictly increasing".into()));
        }
        if samples
            .iter()
            .any(|s| !(s.value.re.is_finite() && s.value.im.is_finite()))
        {
            return Err(Error::Domain("non-finite sample value".into()));
        }
        Ok(TString { t, samples })
    }

    /// Convenience for synthetic polylines: sigma is the vertex index.
    pub fn from_points(t: f64, points: &[ComplexValue]) -> Result<Self> {
        let samples = points
            .iter()
            .enumerate()
            .map(|(k, &value)| Sample {
                sigma: k as f64,
                value,
            })
            .collect();
        TString::from_samples(t, samples)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn values(&self) -> Vec<ComplexValue> {
        self.samples.iter().map(|s| s.value).collect()
    }

    pub fn sigmas(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.sigma).collect()
    }

    /// Sample whose sigma is closest to `sigma`.
    pub fn sample_near(&self, sigma: f64) -> &Sample {
        self.samples
            .iter()
            .min_by(|a, b| {
                (a.sigma - sigma)
                    .abs()
                    .partial_cmp(&(b.sigma - sigma).abs())
                    .unwrap()
            })
            .expect("non-empty")
    }
}

/// Strings for `t = t_start, t_start + t_step, ...` sharing one sigma grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StringFamily {
    pub strings: Vec<TString>,
    pub grid: SigmaGrid,
    pub t_start: f64,
    pub t_stop: f64,
    pub t_step: f64,
}

impl StringFamily {
    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn t_values(&self) -> Vec<f64> {
        self.strings.iter().map(|s| s.t).collect()
    }
}

fn build_with<F>(t: f64, grid: &SigmaGrid, eval: F) -> Result<TString>
where
    F: Fn(EtaArgument) -> Result<ComplexValue> + Sync,
{
    let samples: Result<Vec<Sample>> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let sigma = grid.point(k);
            let annotate = |e: Error| Error::AtSigma {
                sigma,
                source: Box::new(e),
            };
            let s = EtaArgument::new(sigma, t).map_err(annotate)?;
            let value = eval(s).map_err(annotate)?;
            Ok(Sample { sigma, value })
        })
        .collect();
    TString::from_samples(t, samples?)
}

/// One string: `eta(sigma + t i)` at every grid point.
pub fn build_string(t: f64, grid: &SigmaGrid, spec: &PrecisionSpec) -> Result<TString> {
    build_with(t, grid, |s| eta(s, spec))
}

/// One string evaluated with a fixed series length at every sigma, the way a
/// whole figure segment is computed with the length its smallest sigma needs.
pub fn build_string_fixed_terms(
    t: f64,
    grid: &SigmaGrid,
    plan: TruncationPlan,
    compensated_phase: bool,
) -> Result<TString> {
    build_with(t, grid, |s| Ok(eta_truncated(s, plan, compensated_phase)))
}

fn family_ts(t_start: f64, t_stop: f64, t_step: f64) -> Result<Vec<f64>> {
    check_range("t range", t_start, t_stop, t_step)?;
    Ok((0..grid_count(t_start, t_stop, t_step))
        .map(|k| t_start + k as f64 * t_step)
        .collect())
}

/// `Table[eta(sigma + t i), {t, t_start, t_stop, t_step}, {sigma, grid}]`.
pub fn build_family(
    t_start: f64,
    t_stop: f64,
    t_step: f64,
    grid: &SigmaGrid,
    spec: &PrecisionSpec,
) -> Result<StringFamily> {
    let strings = family_ts(t_start, t_stop, t_step)?
        .into_iter()
        .map(|t| build_string(t, grid, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(StringFamily {
        strings,
        grid: *grid,
        t_start,
        t_stop,
        t_step,
    })
}

pub fn build_family_fixed_terms(
    t_start: f64,
    t_stop: f64,
    t_step: f64,
    grid: &SigmaGrid,
    plan: TruncationPlan,
    compensated_phase: bool,
) -> Result<StringFamily> {
    let strings = family_ts(t_start, t_stop, t_step)?
        .into_iter()
        .map(|t| build_string_fixed_terms(t, grid, plan, compensated_phase))
        .collect::<Result<Vec<_>>>()?;
    Ok(StringFamily {
        strings,
        grid: *grid,
        t_start,
        t_stop,
        t_step,
    })
}

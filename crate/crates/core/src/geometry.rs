//! Polyline geometry on t strings: length, nearest approach to the origin,
//! self-crossings, asymptotic angles, and flare classification.

use crate::error::{Error, Result};
use crate::eta::ComplexValue;
use crate::strings::TString;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::f64::consts::LN_2;

/// Sum of straight-segment lengths between consecutive samples.
pub fn arc_length(string: &TString) -> f64 {
    polyline_length(&string.values())
}

pub fn polyline_length(points: &[ComplexValue]) -> f64 {
    points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}

/// `(sigma, |eta|)` of the sample closest to the origin. No interpolation;
/// ties go to the smaller sigma.
pub fn nearest_approach(string: &TString) -> (f64, f64) {
    let mut best = (f64::NAN, f64::INFINITY);
    for s in string.samples() {
        let d = s.value.norm();
        if d < best.1 {
            best = (s.sigma, d);
        }
    }
    best
}

/// Where two non-adjacent segments meet (or pass within the gap tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub point: ComplexValue,
    /// Interpolated sigma on each segment, smaller first.
    pub sigma_pair: (f64, f64),
    /// Segment indices `(i, j)` with `i < j`; segment `i` joins samples `i` and `i + 1`.
    pub segments: (usize, usize),
    /// Distance between the segments; zero for a true crossing.
    pub gap: f64,
}

fn cross(a: ComplexValue, b: ComplexValue) -> f64 {
    a.re * b.im - a.im * b.re
}

fn dot(a: ComplexValue, b: ComplexValue) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Closest point on segment `[a, b]` to `p`, as a parameter in `[0, 1]`.
fn project(p: ComplexValue, a: ComplexValue, b: ComplexValue) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        0.0
    } else {
        (dot(p - a, d) / len2).clamp(0.0, 1.0)
    }
}

/// Contact between segments `[p0, p1]` and `[q0, q1]`: parameters on each
/// segment and the distance between the two contact points.
fn segment_contact(
    p0: ComplexValue,
    p1: ComplexValue,
    q0: ComplexValue,
    q1: ComplexValue,
) -> (f64, f64, f64) {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = cross(r, s);
    let qp = q0 - p0;
    let scale = r.norm() * s.norm();
    if denom.abs() > 1e-14 * scale {
        let u = cross(qp, s) / denom;
        let v = cross(qp, r) / denom;
        if (0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v) {
            return (u, v, 0.0);
        }
    }
    // no proper intersection: best of the four endpoint projections
    let mut best = (0.0, 0.0, f64::INFINITY);
    let candidates = [
        (0.0, project(p0, q0, q1)),
        (1.0, project(p1, q0, q1)),
        (project(q0, p0, p1), 0.0),
        (project(q1, p0, p1), 1.0),
    ];
    for (u, v) in candidates {
        let d = ((p0 + r * u) - (q0 + s * v)).norm();
        if d < best.2 {
            best = (u, v, d);
        }
    }
    best
}

#[derive(Clone, Copy)]
struct Bbox {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

fn bbox(a: ComplexValue, b: ComplexValue, pad: f64) -> Bbox {
    Bbox {
        x0: a.re.min(b.re) - pad,
        x1: a.re.max(b.re) + pad,
        y0: a.im.min(b.im) - pad,
        y1: a.im.max(b.im) + pad,
    }
}

/// Self-crossings of a polyline whose vertices carry parameters `params`.
/// Segments sharing a vertex are never compared. Pairs are pruned with a
/// sweep over bounding boxes sorted by their left edge.
pub fn polyline_crossings(
    points: &[ComplexValue],
    params: &[f64],
    gap_tolerance: f64,
) -> Vec<CrossingReport> {
    assert_eq!(points.len(), params.len());
    if points.len() < 4 {
        return Vec::new();
    }
    let gap = gap_tolerance.max(0.0);
    let nseg = points.len() - 1;
    let boxes: Vec<Bbox> = (0..nseg)
        .map(|i| bbox(points[i], points[i + 1], gap / 2.0))
        .collect();
    let mut order: Vec<usize> = (0..nseg).collect();
    order.sort_by(|&a, &b| boxes[a].x0.partial_cmp(&boxes[b].x0).unwrap_or(Ordering::Equal));

    let mut out = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        let bi = boxes[i];
        for &j in &order[k + 1..] {
            let bj = boxes[j];
            if bj.x0 > bi.x1 {
                break;
            }
            if bj.y0 > bi.y1 || bj.y1 < bi.y0 || i.abs_diff(j) < 2 {
                continue;
            }
            let (i, j) = (i.min(j), i.max(j));
            let (u, v, d) = segment_contact(points[i], points[i + 1], points[j], points[j + 1]);
            if d > gap {
                continue;
            }
            let si = params[i] + u * (params[i + 1] - params[i]);
            let sj = params[j] + v * (params[j + 1] - params[j]);
            let pi = points[i] + (points[i + 1] - points[i]) * u;
            let pj = points[j] + (points[j + 1] - points[j]) * v;
            out.push(CrossingReport {
                point: (pi + pj) * 0.5,
                sigma_pair: (si.min(sj), si.max(sj)),
                segments: (i, j),
                gap: d,
            });
        }
    }
    out.sort_by(|a, b| {
        a.sigma_pair
            .0
            .partial_cmp(&b.sigma_pair.0)
            .unwrap_or(Ordering::Equal)
            .then(a.sigma_pair.1.partial_cmp(&b.sigma_pair.1).unwrap_or(Ordering::Equal))
    });
    out
}

/// Self-crossings of a t string, sorted by the smaller sigma of each pair.
pub fn self_crossings(string: &TString, gap_tolerance: f64) -> Vec<CrossingReport> {
    polyline_crossings(&string.values(), &string.sigmas(), gap_tolerance)
}

fn wrap_degrees(deg: f64) -> f64 {
    let mut a = deg % 360.0;
    if a <= -180.0 {
        a += 360.0;
    } else if a > 180.0 {
        a -= 360.0;
    }
    a
}

/// Direction, in degrees on `(-180, 180]`, in which strings leave 1 for large sigma:
/// the argument of the second term `-2^(-t i)`.
pub fn large_sigma_angle(t: f64) -> f64 {
    wrap_degrees(180.0 - (t * LN_2).to_degrees())
}

/// Argument of `value - 1` in degrees.
pub fn angle_about_one(value: ComplexValue) -> f64 {
    (value - 1.0).arg().to_degrees()
}

/// Inclusive sigma window selecting samples from each string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaWindow {
    pub lo: f64,
    pub hi: f64,
}

impl SigmaWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(Error::Domain(format!("bad sigma window [{lo}, {hi}]")));
        }
        Ok(SigmaWindow { lo, hi })
    }

    pub fn contains(&self, sigma: f64) -> bool {
        let slack = 1e-9 * (1.0 + self.hi.abs());
        sigma >= self.lo - slack && sigma <= self.hi + slack
    }

    pub fn select(&self, string: &TString) -> Vec<ComplexValue> {
        string
            .samples()
            .iter()
            .filter(|s| self.contains(s.sigma))
            .map(|s| s.value)
            .collect()
    }
}

/// Total-least-squares line through a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub centroid: ComplexValue,
    /// Unit direction, oriented from the first point toward the last.
    pub direction: ComplexValue,
    /// RMS perpendicular distance of the points from the line.
    pub rms_residual: f64,
}

/// Eigen-decomposition of the symmetric matrix `[[a, b], [b, c]]`:
/// `(lambda_max, lambda_min, unit eigenvector of lambda_max)`.
fn sym_eigen(a: f64, b: f64, c: f64) -> (f64, f64, ComplexValue) {
    let mean = 0.5 * (a + c);
    let half_diff = 0.5 * (a - c);
    let r = half_diff.hypot(b);
    let angle = 0.5 * (2.0 * b).atan2(a - c);
    (mean + r, mean - r, ComplexValue::from_polar(1.0, angle))
}

pub fn fit_line(points: &[ComplexValue]) -> Result<LineFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateGeometry("line fit needs two points".into()));
    }
    let n = points.len() as f64;
    let centroid = points.iter().sum::<ComplexValue>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let d = p - centroid;
        sxx += d.re * d.re;
        sxy += d.re * d.im;
        syy += d.im * d.im;
    }
    let (lmax, lmin, mut direction) = sym_eigen(sxx, sxy, syy);
    if !(lmax > 0.0) {
        return Err(Error::DegenerateGeometry("all points coincide".into()));
    }
    if dot(points[points.len() - 1] - points[0], direction) < 0.0 {
        direction = -direction;
    }
    Ok(LineFit {
        centroid,
        direction,
        rms_residual: (lmin.max(0.0) / n).sqrt(),
    })
}

/// Condition number above which a concurrency point is not reported.
pub const MAX_CENTER_CONDITION: f64 = 1e8;

/// Least-squares point closest to all fitted lines, with its RMS
/// perpendicular distance to them.
pub fn concurrency_point(lines: &[LineFit]) -> Result<(ComplexValue, f64)> {
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    let (mut r0, mut r1) = (0.0, 0.0);
    for l in lines {
        let nrm = ComplexValue::new(-l.direction.im, l.direction.re);
        let proj = dot(nrm, l.centroid);
        a += nrm.re * nrm.re;
        b += nrm.re * nrm.im;
        c += nrm.im * nrm.im;
        r0 += nrm.re * proj;
        r1 += nrm.im * proj;
    }
    let (lmax, lmin, _) = sym_eigen(a, b, c);
    let condition = if lmin > 0.0 { lmax / lmin } else { f64::INFINITY };
    if !(condition <= MAX_CENTER_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let det = a * c - b * b;
    let center = ComplexValue::new((c * r0 - b * r1) / det, (a * r1 - b * r0) / det);
    let ms = lines
        .iter()
        .map(|l| {
            let nrm = ComplexValue::new(-l.direction.im, l.direction.re);
            dot(nrm, center - l.centroid).powi(2)
        })
        .sum::<f64>()
        / lines.len() as f64;
    Ok((center, ms.sqrt()))
}

fn window_lines(strings: &[TString], window: &SigmaWindow) -> Result<Vec<LineFit>> {
    if strings.len() < 3 {
        return Err(Error::Domain(format!(
            "flare analysis needs at least 3 strings, got {}",
            strings.len()
        )));
    }
    strings
        .iter()
        .map(|s| {
            let pts = window.select(s);
            if pts.len() < 3 {
                return Err(Error::Domain(format!(
                    "string t = {} has {} samples in [{}, {}], need 3",
                    s.t,
                    pts.len(),
                    window.lo,
                    window.hi
                )));
            }
            fit_line(&pts).map_err(|e| match e {
                Error::DegenerateGeometry(m) => {
                    Error::DegenerateGeometry(format!("string t = {}: {m}", s.t))
                }
                other => other,
            })
        })
        .collect()
}

/// Concurrency point of the windowed string segments and its RMS residual.
pub fn fit_center(strings: &[TString], window: &SigmaWindow) -> Result<(ComplexValue, f64)> {
    concurrency_point(&window_lines(strings, window)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlareKind {
    Parallel,
    Radial,
    Jumble,
}

impl std::fmt::Display for FlareKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlareKind::Parallel => "parallel",
            FlareKind::Radial => "radial",
            FlareKind::Jumble => "jumble",
        })
    }
}

/// Decision thresholds for [`classify_flare_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlareThresholds {
    /// Largest arc (degrees) containing every segment direction that still counts as parallel.
    pub parallel_spread_deg: f64,
    /// Largest ratio of line-to-center RMS distance over the segments' RMS
    /// distance from the center that still counts as radial.
    pub radial_ratio: f64,
}

impl Default for FlareThresholds {
    fn default() -> Self {
        FlareThresholds {
            parallel_spread_deg: 90.0,
            radial_ratio: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlareReport {
    pub kind: FlareKind,
    /// Mean direction in degrees (parallel only).
    pub direction: Option<f64>,
    /// Concurrency point (radial only).
    pub center: Option<ComplexValue>,
    /// Smallest arc, in degrees, containing every segment direction.
    pub spread_deg: f64,
    /// RMS perpendicular distance of the fitted lines from the center, when one exists.
    pub residual: Option<f64>,
    /// `residual` divided by the RMS distance of the segments from the center.
    pub concurrency_ratio: Option<f64>,
}

/// Smallest arc (degrees) containing all the given angles (radians).
fn circular_range(angles: &[f64]) -> f64 {
    let mut a: Vec<f64> = angles
        .iter()
        .map(|x| x.to_degrees().rem_euclid(360.0))
        .collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut largest_gap = 360.0 - a[a.len() - 1] + a[0];
    for w in a.windows(2) {
        largest_gap = f64::max(largest_gap, w[1] - w[0]);
    }
    360.0 - largest_gap
}

pub fn classify_flare(strings: &[TString], window: &SigmaWindow) -> Result<FlareReport> {
    classify_flare_with(strings, window, &FlareThresholds::default())
}

/// Classifies the windowed string segments as parallel, radial (concurrent)
/// or jumbled. Segment directions point from high sigma toward low sigma.
pub fn classify_flare_with(
    strings: &[TString],
    window: &SigmaWindow,
    thresholds: &FlareThresholds,
) -> Result<FlareReport> {
    let mut lines = window_lines(strings, window)?;
    for l in &mut lines {
        l.direction = -l.direction;
    }
    let angles: Vec<f64> = lines.iter().map(|l| l.direction.arg()).collect();
    let spread_deg = circular_range(&angles);

    if spread_deg < thresholds.parallel_spread_deg {
        let mean: ComplexValue = lines.iter().map(|l| l.direction).sum();
        return Ok(FlareReport {
            kind: FlareKind::Parallel,
            direction: Some(mean.arg().to_degrees()),
            center: None,
            spread_deg,
            residual: None,
            concurrency_ratio: None,
        });
    }

    let (kind, center, residual, ratio) = match concurrency_point(&lines) {
        Ok((center, residual)) => {
            let scale = (lines
                .iter()
                .map(|l| (l.centroid - center).norm_sqr())
                .sum::<f64>()
                / lines.len() as f64)
                .sqrt();
            let ratio = if scale > 0.0 { residual / scale } else { f64::INFINITY };
            let kind = if ratio < thresholds.radial_ratio {
                FlareKind::Radial
            } else {
                FlareKind::Jumble
            };
            (kind, Some(center), Some(residual), Some(ratio))
        }
        Err(Error::IllConditioned { .. }) => (FlareKind::Jumble, None, None, None),
        Err(e) => return Err(e),
    };
    Ok(FlareReport {
        kind,
        direction: None,
        center: if kind == FlareKind::Radial { center } else { None },
        spread_deg,
        residual,
        concurrency_ratio: ratio,
    })
}

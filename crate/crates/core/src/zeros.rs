//! Zero scanning on the lines sigma = 1/2 and sigma = 1.
//!
//! A coarse grid of `|eta|` values flags local minima, each minimum is polished
//! with Brent's method on `|eta|^2`, and the result is classified as a
//! nontrivial zeta zero or a zero of the factor `1 - 2^(1-s)`.

use crate::error::{Error, Result};
use crate::eta::{eta, trivial_zero_t, EtaArgument, PrecisionSpec};
use crate::strings::grid_count;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroKind {
    /// Zero of zeta on the critical line.
    NonTrivial,
    /// Zero of eta at `1 + 2 pi k i / ln 2` that zeta does not share.
    TrivialEta,
}

impl std::fmt::Display for ZeroKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZeroKind::NonTrivial => "nontrivial",
            ZeroKind::TrivialEta => "trivial-eta",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub t: f64,
    pub kind: ZeroKind,
    pub sigma: f64,
    /// `|eta|` at the reported point.
    pub residual: f64,
    /// Index of a trivial eta zero.
    pub k: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
    /// Grid minima of `|eta|` above this are ignored.
    pub detect_threshold: f64,
    /// Largest `|eta|` a refined zero may keep.
    pub refine_tolerance: f64,
    /// Largest `|eta|` accepted when deciding which line a zero sits on.
    pub classify_tolerance: f64,
    pub spec: PrecisionSpec,
}

pub const DEFAULT_DETECT_THRESHOLD: f64 = 0.5;
pub const DEFAULT_REFINE_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_CLASSIFY_TOLERANCE: f64 = 1e-2;
pub const DEFAULT_SCAN_PRECISION: f64 = 12.0;

impl ScanConfig {
    pub fn new(t_min: f64, t_max: f64, step: f64) -> Result<Self> {
        let c = ScanConfig {
            t_min,
            t_max,
            step,
            detect_threshold: DEFAULT_DETECT_THRESHOLD,
            refine_tolerance: DEFAULT_REFINE_TOLERANCE,
            classify_tolerance: DEFAULT_CLASSIFY_TOLERANCE,
            spec: PrecisionSpec::accelerated(DEFAULT_SCAN_PRECISION),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.t_min, self.t_max, self.step].iter().all(|x| x.is_finite());
        if !finite || !(self.step > 0.0) || self.t_max < self.t_min {
            return Err(Error::Domain(format!(
                "bad scan range {}:{}:{}",
                self.t_min, self.t_max, self.step
            )));
        }
        if !(self.detect_threshold > 0.0 && self.refine_tolerance > 0.0 && self.classify_tolerance > 0.0)
        {
            return Err(Error::Domain("scan thresholds must be positive".into()));
        }
        Ok(())
    }
}

fn modulus(sigma: f64, t: f64, spec: &PrecisionSpec) -> Result<f64> {
    Ok(eta(EtaArgument::new(sigma, t)?, spec)?.norm())
}

/// Brent's derivative-free minimization of `f` on `[a, b]`.
/// Returns `(x, f(x))` once the bracket is narrower than about `2 * xtol`.
pub fn brent_minimize<F>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    const MAX_ITER: usize = 200;
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        let tol1 = xtol + f64::EPSILON * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            // parabola through x, w, v
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= m { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx))
}

fn trivial_index(t: f64) -> Option<u32> {
    let k = (t.abs() * LN_2 / TAU).round();
    if k < 1.0 {
        return None;
    }
    let tk = trivial_zero_t(k as i64).ok()?;
    ((t.abs() - tk).abs() < 1e-3).then_some(k as u32)
}

/// Minimizes `|eta(sigma + t i)|^2` on `[t_lo, t_hi]`.
pub fn refine_zero(t_lo: f64, t_hi: f64, sigma: f64, config: &ScanConfig) -> Result<ZeroRecord> {
    if !(t_lo < t_hi) {
        return Err(Error::Domain(format!("empty bracket [{t_lo}, {t_hi}]")));
    }
    let xtol = (config.refine_tolerance * 1e-3).max(4.0 * f64::EPSILON * t_hi.abs().max(1.0));
    let (t, f2) = brent_minimize(
        |t| Ok(modulus(sigma, t, &config.spec)?.powi(2)),
        t_lo,
        t_hi,
        xtol,
    )?;
    let residual = f2.sqrt();
    let edge = 10.0 * xtol;
    if t - t_lo < edge || t_hi - t < edge || residual > config.detect_threshold {
        return Err(Error::NoZeroInBracket { t_lo, t_hi, sigma });
    }
    let k = if sigma == 1.0 { trivial_index(t) } else { None };
    Ok(ZeroRecord {
        t,
        kind: if k.is_some() {
            ZeroKind::TrivialEta
        } else {
            ZeroKind::NonTrivial
        },
        sigma,
        residual,
        k,
    })
}

/// Decides which line a zero near `record.t` lies on by evaluating `|eta|`
/// on both `sigma = 1` and `sigma = 1/2`.
pub fn classify_zero(record: &ZeroRecord, config: &ScanConfig) -> Result<ZeroRecord> {
    let t = record.t;
    let residual_one = modulus(1.0, t, &config.spec)?;
    let residual_half = modulus(0.5, t, &config.spec)?;
    let tol = config.classify_tolerance;
    if let Some(k) = trivial_index(t) {
        if residual_one < tol {
            return Ok(ZeroRecord {
                t,
                kind: ZeroKind::TrivialEta,
                sigma: 1.0,
                residual: residual_one,
                k: Some(k),
            });
        }
    }
    if residual_half < tol {
        return Ok(ZeroRecord {
            t,
            kind: ZeroKind::NonTrivial,
            sigma: 0.5,
            residual: residual_half,
            k: None,
        });
    }
    Err(Error::Classification {
        t,
        residual_half,
        residual_one,
    })
}

/// `|eta((1 - sigma) + t i)|` for a zero found at `sigma + t i`.
pub fn verify_modified_reflection(record: &ZeroRecord, spec: &PrecisionSpec) -> Result<f64> {
    modulus(1.0 - record.sigma, record.t, spec)
}

/// Interior local minima of `values` below `threshold`.
fn grid_minima(values: &[f64], threshold: f64) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1] && values[i] < threshold)
        .collect()
}

/// All zeros of eta with `t_min <= t <= t_max` on the lines sigma = 1/2 and sigma = 1,
/// sorted by `t`.
pub fn scan_zeros(config: &ScanConfig) -> Result<Vec<ZeroRecord>> {
    config.validate()?;
    // one extra grid point on each side so zeros near the ends have a bracket
    let n = grid_count(config.t_min, config.t_max, config.step) + 2;
    let ts: Vec<f64> = (0..n)
        .map(|i| config.t_min + (i as f64 - 1.0) * config.step)
        .collect();

    let mut found = Vec::new();
    for sigma in [0.5, 1.0] {
        let values = ts
            .par_iter()
            .map(|&t| modulus(sigma, t, &config.spec))
            .collect::<Result<Vec<f64>>>()?;
        let candidates = grid_minima(&values, config.detect_threshold);
        let refined: Vec<Result<Option<ZeroRecord>>> = candidates
            .par_iter()
            .map(|&i| {
                let rec = match refine_zero(ts[i - 1], ts[i + 1], sigma, config) {
                    Ok(r) => r,
                    Err(Error::NoZeroInBracket { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                };
                match classify_zero(&rec, config) {
                    Ok(c) if c.residual <= config.refine_tolerance => Ok(Some(c)),
                    Ok(_) | Err(Error::Classification { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect();
        for r in refined {
            if let Some(z) = r? {
                if z.t >= config.t_min && z.t <= config.t_max {
                    found.push(z);
                }
            }
        }
    }

    found.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    let mut out: Vec<ZeroRecord> = Vec::with_capacity(found.len());
    for z in found {
        match out.last_mut() {
            Some(prev) if prev.kind == z.kind && (z.t - prev.t).abs() < config.step => {
                if z.residual < prev.residual {
                    *prev = z;
                }
            }
            _ => out.push(z),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_parabola_minimum() {
        let (x, fx) = brent_minimize(|x| Ok((x - 0.3).powi(2) + 1.0), -1.0, 2.0, 1e-12).unwrap();
        assert!((x - 0.3).abs() < 1e-8);
        assert!((fx - 1.0).abs() < 1e-15);
        let (x, _) = brent_minimize(|x: f64| Ok(x.cos()), 2.0, 4.5, 1e-12).unwrap();
        assert!((x - std::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn refines_first_zero() {
        let c = ScanConfig::new(10.0, 20.0, 0.1).unwrap();
        let z = refine_zero(14.0, 14.3, 0.5, &c).unwrap();
        assert!((z.t - 14.134_725_141_734_7).abs() < 1e-9);
        assert!(z.residual < 1e-9);
    }

    #[test]
    fn refine_reports_missing_zero() {
        let c = ScanConfig::new(10.0, 20.0, 0.1).unwrap();
        assert!(matches!(
            refine_zero(16.0, 17.0, 0.5, &c),
            Err(Error::NoZeroInBracket { .. })
        ));
    }

    #[test]
    fn conjugate_zeros_pair_up() {
        let c = ScanConfig::new(-30.0, 30.0, 0.1).unwrap();
        let zs = scan_zeros(&c).unwrap();
        let pos: Vec<_> = zs.iter().filter(|z| z.t > 0.0).collect();
        let neg: Vec<_> = zs.iter().filter(|z| z.t < 0.0).collect();
        assert_eq!(pos.len(), neg.len());
        for p in &pos {
            assert!(neg
                .iter()
                .any(|n| n.kind == p.kind && (n.t + p.t).abs() < 1e-8));
        }
    }

    #[test]
    fn classification_of_quoted_points() {
        let c = ScanConfig::new(0.0, 1.0, 0.1).unwrap();
        let rec = |t: f64, sigma: f64| ZeroRecord {
            t,
            kind: ZeroKind::NonTrivial,
            sigma,
            residual: 0.0,
            k: None,
        };
        let z = classify_zero(&rec(9.0647, 1.0), &c).unwrap();
        assert_eq!(z.kind, ZeroKind::TrivialEta);
        assert_eq!(z.k, Some(1));
        let z = classify_zero(&rec(14.1347, 0.5), &c).unwrap();
        assert_eq!(z.kind, ZeroKind::NonTrivial);
        assert!(matches!(
            classify_zero(&rec(10.0, 0.5), &c),
            Err(Error::Classification { .. })
        ));
    }

    #[test]
    fn scan_is_deterministic() {
        let c = ScanConfig::new(10.0, 40.0, 0.1).unwrap();
        assert_eq!(scan_zeros(&c).unwrap(), scan_zeros(&c).unwrap());
    }

    #[test]
    fn modified_reflection_at_first_zero() {
        let c = ScanConfig::new(14.0, 14.3, 0.05).unwrap();
        let z = scan_zeros(&c).unwrap();
        assert_eq!(z.len(), 1);
        let r = verify_modified_reflection(&z[0], &c.spec).unwrap();
        assert!(r < 1e-8);
    }
}

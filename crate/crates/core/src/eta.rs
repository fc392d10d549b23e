//! Dirichlet eta over `sigma >= 0`, and zeta through the eta relation.
//!
//! Two summation strategies are available:
//!
//! * [`Strategy::Truncated`] sums the raw alternating series up to the
//!   length given by [`truncation_length`], i.e. the smallest `n` with
//!   `(n + 1)^-sigma < 10^-p * 2^-sigma`. Precision is measured against the
//!   `n = 2` term, not against `|eta|`, so relative error is unbounded near
//!   zeros. Needs `sigma > 0`.
//! * [`Strategy::Accelerated`] applies Chebyshev-binomial weights to the
//!   first `n` terms (Borwein's second algorithm). The weighted sum converges
//!   geometrically like `(3 + sqrt 8)^-n` for every `sigma >= 0`, including
//!   `sigma = 0` where the raw series diverges; values there are the
//!   analytically continued ones.

use crate::dd;
use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, ln_sin};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// A point in the complex plane. Used for eta/zeta values and single summands.
pub type ComplexValue = Complex64;

/// `s = sigma + t i` restricted to `sigma >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaArgument {
    pub sigma: f64,
    pub t: f64,
}

impl EtaArgument {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {sigma} + {t}i")));
        }
        if sigma < 0.0 {
            return Err(Error::Domain(format!("sigma = {sigma} is negative")));
        }
        Ok(EtaArgument { sigma, t })
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn conj(&self) -> Self {
        EtaArgument {
            sigma: self.sigma,
            t: -self.t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Truncated,
    Accelerated,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "truncated" => Ok(Strategy::Truncated),
            "accelerated" => Ok(Strategy::Accelerated),
            other => Err(Error::Usage(format!("unknown strategy '{other}'"))),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Truncated => f.write_str("truncated"),
            Strategy::Accelerated => f.write_str("accelerated"),
        }
    }
}

/// Requested precision `p` (decimal digits relative to the `n = 2` term).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionSpec {
    pub p: f64,
    pub strategy: Strategy,
    pub compensated_phase: bool,
}

impl Default for PrecisionSpec {
    fn default() -> Self {
        PrecisionSpec {
            p: 6.0,
            strategy: Strategy::Accelerated,
            compensated_phase: false,
        }
    }
}

impl PrecisionSpec {
    pub fn new(p: f64, strategy: Strategy) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::Domain(format!("precision p = {p} must be positive")));
        }
        Ok(PrecisionSpec {
            p,
            strategy,
            compensated_phase: false,
        })
    }

    pub fn accelerated(p: f64) -> Self {
        PrecisionSpec {
            p,
            strategy: Strategy::Accelerated,
            compensated_phase: false,
        }
    }

    pub fn truncated(p: f64) -> Self {
        PrecisionSpec {
            p,
            strategy: Strategy::Truncated,
            compensated_phase: false,
        }
    }

    pub fn with_compensated_phase(mut self, on: bool) -> Self {
        self.compensated_phase = on;
        self
    }
}

/// Number of summands kept by the truncated strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub n_terms: u64,
}

impl TruncationPlan {
    pub fn new(n_terms: u64) -> Result<Self> {
        if n_terms < 2 {
            return Err(Error::Domain(format!("n_terms = {n_terms} must be at least 2")));
        }
        Ok(TruncationPlan { n_terms })
    }
}

/// Largest series length the truncated strategy will attempt.
pub const MAX_TRUNCATED_TERMS: u64 = 1 << 40;

/// Largest weight count the accelerated strategy will attempt.
pub const MAX_ACCELERATED_TERMS: usize = 10_000_000;

/// `n = ceil(2 * 10^(p / sigma))`.
///
/// The paper-style rule rounds up; a value within 1e-9 (relative) of an
/// integer is taken as that integer so that `2 * 10^2` yields 200, not 201.
pub fn truncation_length(sigma: f64, p: f64) -> Result<TruncationPlan> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "truncation length needs sigma > 0 (got {sigma}); it diverges as sigma -> 0"
        )));
    }
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!("precision p = {p} must be positive")));
    }
    let x = 2.0 * 10f64.powf(p / sigma);
    if !(x < MAX_TRUNCATED_TERMS as f64) {
        return Err(Error::Domain(format!(
            "truncation length 2*10^({p}/{sigma}) exceeds {MAX_TRUNCATED_TERMS} terms"
        )));
    }
    let nearest = x.round();
    let n = if (x - nearest).abs() <= 1e-9 * x {
        nearest
    } else {
        x.ceil()
    };
    TruncationPlan::new((n as u64).max(2))
}

#[inline]
fn phase_of(n: u64, t: f64, compensated: bool) -> f64 {
    if compensated {
        dd::reduced_phase(t, n)
    } else {
        t * (n as f64).ln()
    }
}

/// `n^-s = n^-sigma * exp(-i t ln n)` without the alternating sign.
#[inline]
fn power_term(n: u64, s: &EtaArgument, compensated: bool) -> Complex64 {
    if n == 1 {
        return Complex64::new(1.0, 0.0);
    }
    let modulus = (-s.sigma * (n as f64).ln()).exp();
    let (sin, cos) = phase_of(n, s.t, compensated).sin_cos();
    Complex64::new(modulus * cos, -modulus * sin)
}

/// The signed summand `(-1)^(n-1) n^-s` in polar form.
pub fn eta_term(n: u64, s: EtaArgument, compensated_phase: bool) -> Result<ComplexValue> {
    if n == 0 {
        return Err(Error::Domain("summand index n must be >= 1".into()));
    }
    let v = power_term(n, &s, compensated_phase);
    Ok(if n % 2 == 0 { -v } else { v })
}

/// Neumaier-compensated complex accumulator.
#[derive(Default)]
struct Accumulator {
    re: f64,
    im: f64,
    c_re: f64,
    c_im: f64,
}

impl Accumulator {
    #[inline]
    fn add(&mut self, v: Complex64) {
        let t = self.re + v.re;
        self.c_re += if self.re.abs() >= v.re.abs() {
            (self.re - t) + v.re
        } else {
            (v.re - t) + self.re
        };
        self.re = t;
        let t = self.im + v.im;
        self.c_im += if self.im.abs() >= v.im.abs() {
            (self.im - t) + v.im
        } else {
            (v.im - t) + self.im
        };
        self.im = t;
    }

    fn total(&self) -> Complex64 {
        Complex64::new(self.re + self.c_re, self.im + self.c_im)
    }
}

/// Raw alternating sum of the first `plan.n_terms` summands.
pub fn eta_truncated(s: EtaArgument, plan: TruncationPlan, compensated_phase: bool) -> ComplexValue {
    let mut acc = Accumulator::default();
    for n in 1..=plan.n_terms {
        let v = power_term(n, &s, compensated_phase);
        acc.add(if n % 2 == 0 { -v } else { v });
    }
    acc.total()
}

/// Number of Chebyshev-weighted terms needed for absolute error below
/// `10^-p * 2^-sigma`.
///
/// The error of the weighted sum is bounded by
/// `3 (1 + 2|t|) exp(pi |t| / 2) / (3 + sqrt 8)^n` for `sigma >= 1/2`;
/// below 1/2 an extra `(1 + |t|)^(1/2 - sigma)` covers the growth of
/// `1 / |Gamma(s)|`. The digit target is capped at 30 since f64 rounding
/// dominates long before that.
pub fn accelerated_terms(s: &EtaArgument, p: f64) -> Result<usize> {
    let t = s.t.abs();
    let log10_e = std::f64::consts::LOG10_E;
    let bound = 3f64.log10()
        + (1.0 + 2.0 * t).log10()
        + 0.5 * PI * t * log10_e
        + (0.5 - s.sigma).max(0.0) * (1.0 + t).log10();
    let digits = (p + s.sigma * 2f64.log10()).min(30.0);
    let rate = (3.0 + 8f64.sqrt()).log10();
    let n = ((bound + digits) / rate).ceil() + 1.0;
    if !(n <= MAX_ACCELERATED_TERMS as f64) {
        return Err(Error::Domain(format!(
            "t = {} needs more than {MAX_ACCELERATED_TERMS} accelerated terms",
            s.t
        )));
    }
    Ok((n as usize).max(2))
}

/// Weights `(d_n - d_k) / d_n`, `k = 0..n`, of Borwein's second algorithm,
/// where `d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)`.
///
/// Formed from normalised suffix sums in log space so that `n` in the
/// thousands neither overflows nor loses the small weights near `k = n`.
pub fn chebyshev_weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    // log of a_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), with a_0 = 1
    let mut log_a = Vec::with_capacity(n + 1);
    log_a.push(0.0f64);
    for i in 0..n {
        let fi = i as f64;
        let ratio = 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        log_a.push(log_a[i] + ratio.ln());
    }
    let peak = log_a.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let a: Vec<f64> = log_a.iter().map(|l| (l - peak).exp()).collect();
    let total: f64 = a.iter().sum();
    // suffix[k] = sum_{i>k} a_i
    let mut weights = vec![0.0; n];
    let mut suffix = 0.0;
    for k in (0..n).rev() {
        suffix += a[k + 1];
        weights[k] = suffix / total;
    }
    weights
}

fn eta_accelerated(s: EtaArgument, p: f64, compensated: bool) -> Result<ComplexValue> {
    let n = accelerated_terms(&s, p)?;
    let weights = chebyshev_weights(n);
    let mut acc = Accumulator::default();
    for (k, w) in weights.iter().enumerate() {
        let v = power_term(k as u64 + 1, &s, compensated) * *w;
        acc.add(if k % 2 == 1 { -v } else { v });
    }
    Ok(acc.total())
}

fn check_finite(v: ComplexValue, what: &str) -> Result<ComplexValue> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{what} evaluated to a non-finite value")))
    }
}

/// Dirichlet eta at `s` with the requested strategy and precision.
pub fn eta(s: EtaArgument, spec: &PrecisionSpec) -> Result<ComplexValue> {
    let s = EtaArgument::new(s.sigma, s.t)?;
    if !(spec.p > 0.0) {
        return Err(Error::Domain(format!("precision p = {} must be positive", spec.p)));
    }
    let v = match spec.strategy {
        Strategy::Truncated => {
            let plan = truncation_length(s.sigma, spec.p)?;
            eta_truncated(s, plan, spec.compensated_phase)
        }
        Strategy::Accelerated => eta_accelerated(s, spec.p, spec.compensated_phase)?,
    };
    check_finite(v, "eta")
}

/// Tolerance on `|1 - 2^(1-s)|` and `|s - 1|` below which a point counts as singular.
pub const SINGULAR_TOLERANCE: f64 = 1e-9;

/// `2^z` for complex `z`.
fn pow2(z: Complex64) -> Complex64 {
    (z * LN_2).exp()
}

/// Zeta through `zeta(s) = eta(s) / (1 - 2^(1-s))`.
///
/// The removable points `s = 1 + 2 pi k i / ln 2` (`k != 0`), where eta has
/// its trivial zeros, are reported rather than computed through.
pub fn zeta_from_eta(s: EtaArgument, spec: &PrecisionSpec) -> Result<ComplexValue> {
    let z = s.as_complex();
    if (z - 1.0).norm() < SINGULAR_TOLERANCE {
        return Err(Error::Pole);
    }
    let denom = 1.0 - pow2(1.0 - z);
    if denom.norm() < SINGULAR_TOLERANCE {
        return Err(Error::DenominatorZero {
            sigma: s.sigma,
            t: s.t,
            magnitude: denom.norm(),
        });
    }
    let e = eta(s, spec)?;
    check_finite(e / denom, "zeta")
}

/// Functional-equation factor mapping `eta(1 - s)` to `eta(s)`:
/// `2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) (1 - 2^(1-s)) / (1 - 2^s)`.
pub fn reflection_factor(s: EtaArgument) -> Result<ComplexValue> {
    let z = s.as_complex();
    let denom = 1.0 - pow2(z);
    if denom.norm() < SINGULAR_TOLERANCE {
        return Err(Error::DenominatorZero {
            sigma: s.sigma,
            t: s.t,
            magnitude: denom.norm(),
        });
    }
    let log_part = z * LN_2 + (z - 1.0) * PI.ln() + ln_sin(0.5 * PI * z) + ln_gamma(1.0 - z);
    let factor = log_part.exp() * (1.0 - pow2(1.0 - z)) / denom;
    check_finite(factor, "reflection factor")
}

/// `|eta(s) - factor(s) * eta(1 - s)|` for `0 < sigma < 1`.
pub fn reflection_residual(s: EtaArgument, spec: &PrecisionSpec) -> Result<f64> {
    let s = EtaArgument::new(s.sigma, s.t)?;
    if !(s.sigma > 0.0 && s.sigma < 1.0) {
        return Err(Error::Domain(format!(
            "reflection residual needs 0 < sigma < 1 (got {})",
            s.sigma
        )));
    }
    let factor = reflection_factor(s)?;
    let lhs = eta(s, spec)?;
    let rhs = factor * eta(EtaArgument::new(1.0 - s.sigma, -s.t)?, spec)?;
    Ok((lhs - rhs).norm())
}

/// `t = 2 pi k / ln 2`, where the `sigma = 1` end of a string meets the origin.
pub fn trivial_zero_t(k: i64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain(format!("trivial zero index k = {k} must be >= 1")));
    }
    Ok(2.0 * PI * k as f64 / LN_2)
}

//! Double-word ("double-double") arithmetic for phase reduction at large `t`.
//!
//! A value is carried as an unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! giving roughly 106 bits of significand. Only the handful of operations
//! needed to form `t * ln(n) mod 2pi` are provided.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// ln 2 split into two doubles.
pub const LN_2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

/// 2pi split into two doubles.
pub const TWO_PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::TAU,
    lo: 2.449_293_598_294_706_4e-16,
};

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    pub fn div(self, b: DoubleDouble) -> Self {
        // one long-division step on the high part, then a correction
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }
    }

    /// Nearest integer multiple of 2pi removed; result lies in roughly [-pi, pi].
    pub fn rem_two_pi(self) -> Self {
        let k = (self.hi / TWO_PI.hi).round();
        if k == 0.0 {
            return self;
        }
        let r = self - TWO_PI.mul_f64(k);
        // `k` may be off by one when `self.hi` sits on a half-period boundary
        let k2 = (r.hi / TWO_PI.hi).round();
        if k2 == 0.0 {
            r
        } else {
            r - TWO_PI.mul_f64(k2)
        }
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    fn add(self, b: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> DoubleDouble {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    fn sub(self, b: DoubleDouble) -> DoubleDouble {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    fn mul(self, b: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

/// Natural logarithm of a positive integer below 2^53, to double-double accuracy.
///
/// Writes `n = 2^e * m` with `m` in `[1/sqrt 2, sqrt 2)` and sums the
/// `atanh` series of `z = (m - 1) / (m + 1)`, where `|z| < 0.172`.
pub fn ln_integer(n: u64) -> DoubleDouble {
    assert!(n >= 1 && n < (1u64 << 53), "ln_integer: n out of range");
    if n == 1 {
        return DoubleDouble::ZERO;
    }
    let x = n as f64;
    let mut e = 63 - n.leading_zeros() as i32;
    let mut m = x / f64::powi(2.0, e);
    if m > std::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    // m - 1 is exact (Sterbenz); m + 1 is carried exactly as a pair
    let num = DoubleDouble::from_f64(m - 1.0);
    let (dh, dl) = two_sum(m, 1.0);
    let z = num.div(DoubleDouble { hi: dh, lo: dl });
    let z2 = z * z;

    let mut power = z;
    let mut sum = z;
    let mut k = 3.0;
    loop {
        power = power * z2;
        let term = power.div(DoubleDouble::from_f64(k));
        sum = sum + term;
        if term.hi.abs() <= 1e-34 * sum.hi.abs() {
            break;
        }
        k += 2.0;
    }
    LN_2.mul_f64(e as f64) + sum.mul_f64(2.0)
}

/// `t * ln(n)` reduced to approximately `[-pi, pi]`, carried in double-double.
pub fn reduced_phase(t: f64, n: u64) -> f64 {
    ln_integer(n).mul_f64(t).rem_two_pi().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_integer_matches_libm_to_double_precision() {
        for n in [2u64, 3, 10, 12345, 999_983, 1 << 40, (1 << 52) + 7] {
            let got = ln_integer(n);
            let want = (n as f64).ln();
            assert!((got.hi - want).abs() <= 2.0 * f64::EPSILON * want, "n = {n}");
        }
    }

    #[test]
    fn ln_two_low_word_is_consistent() {
        let l = ln_integer(2);
        assert_eq!(l.hi, LN_2.hi);
        assert!((l.lo - LN_2.lo).abs() < 1e-31);
    }

    #[test]
    fn ln_product_identity_holds_in_low_word() {
        // ln(6) = ln(2) + ln(3) to ~1e-31
        let lhs = ln_integer(6);
        let rhs = ln_integer(2) + ln_integer(3);
        let d = (lhs - rhs).to_f64();
        assert!(d.abs() < 1e-30, "diff {d:e}");
    }

    // reference values from a 40-digit computation of t*ln(n) - 2pi*round(...)
    #[test]
    fn reduced_phase_matches_high_precision_reference() {
        let cases = [
            (1e10, 2u64, -1.487_494_063_448_749_3),
            (267_653_395_649.362_37, 123_457, 2.851_258_576_582_464_9),
            (267_653_395_649.362_37, 2, -0.024_590_808_688_990_203),
            (12_345_678.9, 999_983, 1.704_382_691_253_481_1),
            (1e8, 3, -2.335_441_198_866_882),
        ];
        for (t, n, want) in cases {
            let got = reduced_phase(t, n);
            assert!((got - want).abs() < 1e-13, "t={t} n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn uncompensated_phase_loses_accuracy_at_large_t() {
        let t = 267_653_395_649.362_37;
        let naive = (t * (123_457f64).ln()).rem_euclid(std::f64::consts::TAU);
        let naive = if naive > std::f64::consts::PI {
            naive - std::f64::consts::TAU
        } else {
            naive
        };
        assert!((naive - 2.851_258_576_582_464_9).abs() > 1e-6);
    }
}

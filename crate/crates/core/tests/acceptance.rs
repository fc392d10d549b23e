//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line straight to stderr (visible without
//! `--nocapture`) and then asserts the verdict.

use eta_strings::geometry::{
    angle_about_one, arc_length, classify_flare, large_sigma_angle, polyline_crossings,
    self_crossings, FlareKind, SigmaWindow,
};
use eta_strings::render::{csv_string, format_float};
use eta_strings::strings::{build_family, build_string, SigmaGrid};
use eta_strings::zeros::{scan_zeros, ScanConfig, ZeroKind};
use eta_strings::{
    eta, eta_truncated, reflection_residual, trivial_zero_t, truncation_length, ComplexValue,
    EtaArgument, PrecisionSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;

fn report(n: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {verdict} {detail}");
    assert!(pass, "criterion {n}: {detail}");
}

fn note(n: u32, detail: &str) {
    let _ = writeln!(std::io::stderr(), "criterion {n}: {detail}");
}

fn hi() -> PrecisionSpec {
    PrecisionSpec::accelerated(12.0)
}

#[test]
fn criterion_01_truncation_rule() {
    let got: Vec<u64> = [(4.0, 3.0), (1.5, 3.0), (0.5, 3.0)]
        .iter()
        .map(|&(s, p)| truncation_length(s, p).unwrap().n_terms)
        .collect();
    report(1, got == [12, 200, 2_000_000], &format!("lengths {got:?}"));
}

#[test]
fn criterion_02_known_values() {
    let at = |s: f64, t: f64| eta(EtaArgument::new(s, t).unwrap(), &hi()).unwrap();
    let first = at(0.5, 14.134725);
    let quoted = ComplexValue::new(1.62123e-6, -2.6635e-7);
    let d_first = (first - quoted).norm();
    let ok_first = d_first < 5e-7;

    let coord_ok = |v: ComplexValue, re: f64, im: f64| {
        (v.re - re).abs() < 5e-6 && (v.im - im).abs() < 5e-6
    };
    let v9 = at(9.0, 22.0);
    let v10 = at(10.0, 22.0);
    let ok9 = coord_ok(v9, 1.00178, 0.000904055);
    let ok10 = coord_ok(v10, 1.00088, 0.000445673);
    report(
        2,
        ok_first && ok9 && ok10,
        &format!(
            "eta(0.5+14.134725i) = {:.6e}{:+.6e}i, distance to quote {:.3e} (tol 5e-7) {}; \
             eta(9+22i) = {:.8}{:+.8e}i {}; eta(10+22i) = {:.8}{:+.8e}i {}",
            first.re,
            first.im,
            d_first,
            if ok_first { "ok" } else { "off" },
            v9.re,
            v9.im,
            if ok9 { "ok" } else { "off" },
            v10.re,
            v10.im,
            if ok10 { "ok" } else { "off" },
        ),
    );
}

#[test]
fn criterion_03_real_axis() {
    let grid = SigmaGrid::new(0.0, 1.0, 0.05).unwrap();
    let s = build_string(0.0, &grid, &hi()).unwrap();
    let v = s.values();
    let increasing = v.windows(2).all(|w| w[1].re > w[0].re) && v.iter().all(|z| z.im == 0.0);
    let ends = (v[0].re - 0.5).abs() < 1e-9 && (v[v.len() - 1].re - std::f64::consts::LN_2).abs() < 1e-9;
    let len = arc_length(&s);
    let err = (len - (std::f64::consts::LN_2 - 0.5)).abs();
    report(
        3,
        increasing && ends && err <= 1e-9,
        &format!("monotone {increasing}, endpoints ok {ends}, arc length {len:.12} (error {err:.1e})"),
    );
}

#[test]
fn criterion_04_trivial_zeros() {
    let quotes = [9.0647, 18.1294, 27.1941, 36.2588, 45.3235, 54.3882, 63.4529];
    let mut bad = Vec::new();
    let mut worst_eta: f64 = 0.0;
    for (k, q) in (1..=7).zip(quotes) {
        let t = trivial_zero_t(k).unwrap();
        // "to 4 decimal places": the quote is t with the digits after the fourth dropped
        if ((t * 1e4).floor() / 1e4 - q).abs() > 1e-9 {
            bad.push(format!("k={k}: {t:.6} vs {q}"));
        }
        let r = eta(EtaArgument::new(1.0, t).unwrap(), &hi()).unwrap().norm();
        worst_eta = worst_eta.max(r);
    }
    let detail = format!(
        "max |eta(1+i t_k)| = {worst_eta:.2e} (tol 1e-8); mismatched quotes: {}",
        if bad.is_empty() { "none".to_string() } else { bad.join(", ") }
    );
    report(4, bad.is_empty() && worst_eta < 1e-8, &detail);
}

const CENSUS: [(f64, u32); 16] = [
    (14.134725, 6),
    (21.022039639, 9),
    (25.010857580, 9),
    (30.424, 3),
    (32.935, 3),
    (37.586, 3),
    (40.918, 3),
    (43.327, 3),
    (48.005, 3),
    (49.773, 3),
    (52.970, 3),
    (56.446, 3),
    (59.347, 3),
    (60.831, 3),
    (65.112, 3),
    (67.079, 3),
];

fn census_csv() -> (String, Vec<f64>) {
    let config = ScanConfig::new(14.0, 68.0, 0.1).unwrap();
    let zeros = scan_zeros(&config).unwrap();
    let mut csv = String::from("t,kind,sigma,residual,k\n");
    for z in &zeros {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            format_float(z.t),
            z.kind,
            format_float(z.sigma),
            format_float(z.residual),
            z.k.map(|k| k.to_string()).unwrap_or_default()
        ));
    }
    let ts = zeros
        .iter()
        .filter(|z| z.kind == ZeroKind::NonTrivial)
        .map(|z| z.t)
        .collect();
    (csv, ts)
}

#[test]
fn criterion_05_zero_census() {
    let start = std::time::Instant::now();
    let (_, ts) = census_csv();
    let mut misses = Vec::new();
    if ts.len() == CENSUS.len() {
        for (t, (q, dec)) in ts.iter().zip(CENSUS) {
            if (t - q).abs() >= 10f64.powi(-(dec as i32)) {
                misses.push(format!("{t:.10} vs {q}"));
            }
        }
    }
    report(
        5,
        ts.len() == 16 && misses.is_empty(),
        &format!(
            "{} nontrivial zeros, mismatches: {:?}, {:.2?}",
            ts.len(),
            misses,
            start.elapsed()
        ),
    );
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

#[test]
fn criterion_06_strategy_agreement() {
    let start = std::time::Instant::now();
    let sigmas = linspace(0.5, 10.0, 20);
    let ts = linspace(0.0, 120.0, 10);
    let truncated = PrecisionSpec::truncated(3.0);
    let reference = PrecisionSpec::accelerated(10.0);
    let min_plan = truncation_length(sigmas[0], 3.0).unwrap();

    let mut over = Vec::new();
    let mut over_segment = 0;
    let mut worst = (0.0, 0.0, 0.0);
    for &sigma in &sigmas {
        for &t in &ts {
            let s = EtaArgument::new(sigma, t).unwrap();
            let r = eta(s, &reference).unwrap();
            let bound = 1e-3 * 2f64.powf(-sigma);
            let d = (eta(s, &truncated).unwrap() - r).norm();
            if d > bound {
                over.push((sigma, t));
            }
            if d / bound > worst.2 {
                worst = (sigma, t, d / bound);
            }
            // one series length for the whole grid, fixed by its smallest sigma
            if (eta_truncated(s, min_plan, false) - r).norm() > bound {
                over_segment += 1;
            }
        }
    }
    note(
        6,
        &format!(
            "info: with the series length fixed by the grid's smallest sigma ({} terms) {over_segment}/200 points exceed the bound",
            min_plan.n_terms
        ),
    );
    report(
        6,
        over.is_empty(),
        &format!(
            "{}/200 points exceed 1e-3*2^-sigma with per-point lengths; worst ratio {:.2} at sigma={:.3}, t={:.1}; {:.2?}",
            over.len(),
            worst.2,
            worst.0,
            worst.1,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_07_reflection() {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for sigma in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for t in linspace(0.5, 95.0, 10) {
            let r = reflection_residual(EtaArgument::new(sigma, t).unwrap(), &hi()).unwrap();
            worst = worst.max(r);
            n += 1;
        }
    }
    report(7, n == 50 && worst < 1e-6, &format!("{n} points, max residual {worst:.2e}"));
}

#[test]
fn criterion_08_string_angle() {
    let grid = SigmaGrid::new(9.0, 10.0, 0.1).unwrap();
    let family = build_family(22.0, 28.0, 1.0, &grid, &hi()).unwrap();
    let s22 = &family.strings[0];
    assert_eq!(s22.t, 22.0);
    let a10 = angle_about_one(s22.samples().last().unwrap().value);
    let a9 = angle_about_one(s22.samples()[0].value);
    let limit = large_sigma_angle(22.0);
    let ok10 = (a10 - 26.85).abs() <= 0.05;
    let ok9 = (a9 - 26.92).abs() <= 0.05;
    let ok_limit = (limit - 26.29).abs() <= 0.01;
    report(
        8,
        ok10 && ok9 && ok_limit,
        &format!(
            "sigma=10 end {a10:.4} deg (want 26.85) {}; sigma=9 end {a9:.4} deg (want 26.92) {}; limit {limit:.4} deg (want 26.29) {}",
            if ok10 { "ok" } else { "off" },
            if ok9 { "ok" } else { "off" },
            if ok_limit { "ok" } else { "off" },
        ),
    );
}

struct FlareCase {
    t: (f64, f64, f64),
    sigma: (f64, f64, f64),
}

const FLARES: [FlareCase; 3] = [
    FlareCase {
        t: (111.0295, 111.8746, 0.0939),
        sigma: (4.0, 7.0, 0.02),
    },
    FlareCase {
        t: (22.0, 28.0, 1.0),
        sigma: (9.0, 10.0, 0.1),
    },
    FlareCase {
        t: (111.0295, 111.8746, 0.0939),
        sigma: (0.4, 0.5, 0.01),
    },
];

fn flare_run() -> (Vec<eta_strings::geometry::FlareReport>, String) {
    let spec = PrecisionSpec::default();
    let mut csv = String::new();
    let mut reports = Vec::new();
    for c in &FLARES {
        let grid = SigmaGrid::new(c.sigma.0, c.sigma.1, c.sigma.2).unwrap();
        let family = build_family(c.t.0, c.t.1, c.t.2, &grid, &spec).unwrap();
        csv.push_str(&csv_string(&family.strings));
        let window = SigmaWindow::new(c.sigma.0, c.sigma.1).unwrap();
        reports.push(classify_flare(&family.strings, &window).unwrap());
    }
    (reports, csv)
}

#[test]
fn criterion_09_flares() {
    let (r, _) = flare_run();
    let near = |c: Option<ComplexValue>, x: f64, y: f64, tol: f64| {
        c.map_or(false, |c| (c - ComplexValue::new(x, y)).norm() <= tol)
    };
    let a = r[0].kind == FlareKind::Parallel;
    let b = r[1].kind == FlareKind::Radial && near(r[1].center, 1.0, 0.0, 0.01);
    let c = r[2].kind == FlareKind::Radial && near(r[2].center, 0.4, 0.1, 0.2);
    let center = |c: Option<ComplexValue>| {
        c.map(|c| format!("({:.5}, {:.5})", c.re, c.im)).unwrap_or_else(|| "-".into())
    };
    report(
        9,
        a && b && c,
        &format!(
            "sigma 4..7: {}; sigma 9..10: {} center {}; sigma 0.4..0.5: {} center {}",
            r[0].kind,
            r[1].kind,
            center(r[1].center),
            r[2].kind,
            center(r[2].center)
        ),
    );
}

fn brute_force(points: &[ComplexValue]) -> Vec<(usize, usize)> {
    let orient = |a: ComplexValue, b: ComplexValue, p: ComplexValue| {
        (b.re - a.re) * (p.im - a.im) - (b.im - a.im) * (p.re - a.re)
    };
    let mut out = Vec::new();
    for i in 0..points.len() - 1 {
        for j in i + 2..points.len() - 1 {
            let (a, b, p, q) = (points[i], points[i + 1], points[j], points[j + 1]);
            if orient(a, b, p) * orient(a, b, q) < 0.0 && orient(p, q, a) * orient(p, q, b) < 0.0 {
                out.push((i, j));
            }
        }
    }
    out
}

#[test]
fn criterion_10_self_crossings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut disagreements = 0;
    let mut total = 0;
    for _ in 0..1000 {
        let segments = rng.gen_range(1..=50);
        let pts: Vec<ComplexValue> = (0..=segments)
            .map(|_| ComplexValue::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let params: Vec<f64> = (0..pts.len()).map(|k| k as f64).collect();
        let mut got: Vec<_> = polyline_crossings(&pts, &params, 0.0)
            .into_iter()
            .map(|x| x.segments)
            .collect();
        got.sort();
        let want = brute_force(&pts);
        total += want.len();
        if got != want {
            disagreements += 1;
        }
    }
    let grid = SigmaGrid::new(0.4, 1.5, 0.01).unwrap();
    let s = build_string(357.612, &grid, &PrecisionSpec::default()).unwrap();
    let xs = self_crossings(&s, 0.0);
    let loc = xs
        .first()
        .map(|x| format!(" at sigma ({:.4}, {:.4})", x.sigma_pair.0, x.sigma_pair.1))
        .unwrap_or_default();
    report(
        10,
        disagreements == 0 && xs.len() == 1,
        &format!(
            "1000 random polylines ({total} crossings): {disagreements} disagreements; t=357.612 string: {} crossing(s){loc}",
            xs.len()
        ),
    );
}

#[test]
fn criterion_11_extended_precision() {
    note(
        11,
        "NOT ATTEMPTED (optional): at t = 2.7e11 both the truncated and the accelerated sums need \
         more than t/pi ~ 8.5e10 terms per point",
    );
}

#[test]
fn criterion_12_determinism() {
    let (a5, _) = census_csv();
    let (b5, _) = census_csv();
    let (_, a9) = flare_run();
    let (_, b9) = flare_run();
    report(
        12,
        a5 == b5 && a9 == b9,
        &format!(
            "zero census CSV {} bytes identical {}; flare family CSV {} bytes identical {}",
            a5.len(),
            a5 == b5,
            a9.len(),
            a9 == b9
        ),
    );
}

//! CSV and SVG output for strings and families.

use crate::error::{Error, Result};
use crate::eta::ComplexValue;
use crate::strings::TString;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Csv,
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::Usage(format!("unknown format '{other}'"))),
        }
    }
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub format: OutputFormat,
    pub width: u32,
    pub height: u32,
    pub equal_axes: bool,
    pub dot_radius: f64,
    /// Plot `eta - 1` instead of `eta`.
    pub subtract_one: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            format: OutputFormat::Csv,
            width: 800,
            height: 800,
            equal_axes: true,
            dot_radius: 2.0,
            subtract_one: false,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Usage("SVG width and height must be positive".into()));
        }
        if !(self.dot_radius > 0.0 && self.dot_radius.is_finite()) {
            return Err(Error::Usage("dot radius must be positive".into()));
        }
        Ok(())
    }
}

/// 12 significant digits, shortest form: trailing zeros dropped, exponent
/// notation outside `[1e-4, 1e12)`. Zero (of either sign) is `0.0`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let fixed = format!("{:.*}", decimals, x);
    if fixed.contains('.') {
        let s = fixed.trim_end_matches('0');
        if s.ends_with('.') {
            format!("{s}0")
        } else {
            s.to_string()
        }
    } else {
        format!("{fixed}.0")
    }
}

/// Rows `t,sigma,re,im` ordered by `t` then `sigma`.
pub fn write_csv<W: Write>(strings: &[TString], mut out: W) -> Result<()> {
    let mut order: Vec<&TString> = strings.iter().collect();
    order.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    let mut buf = String::from("t,sigma,re,im\n");
    for s in order {
        let t = format_float(s.t);
        for sample in s.samples() {
            let _ = writeln!(
                buf,
                "{t},{},{},{}",
                format_float(sample.sigma),
                format_float(sample.value.re),
                format_float(sample.value.im)
            );
        }
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

pub fn csv_string(strings: &[TString]) -> String {
    let mut v = Vec::new();
    write_csv(strings, &mut v).expect("writing to memory");
    String::from_utf8(v).expect("ascii")
}

#[derive(Debug, Clone, Copy)]
struct Extent {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

fn extent(points: impl Iterator<Item = ComplexValue>) -> Extent {
    let mut e = Extent {
        x0: f64::INFINITY,
        x1: f64::NEG_INFINITY,
        y0: f64::INFINITY,
        y1: f64::NEG_INFINITY,
    };
    for p in points {
        e.x0 = e.x0.min(p.re);
        e.x1 = e.x1.max(p.re);
        e.y0 = e.y0.min(p.im);
        e.y1 = e.y1.max(p.im);
    }
    e
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Maps data coordinates onto the pixel canvas, y pointing up.
struct Viewport {
    sx: f64,
    sy: f64,
    cx: f64,
    cy: f64,
    w: f64,
    h: f64,
}

impl Viewport {
    fn new(e: Extent, spec: &RenderSpec) -> Self {
        let (w, h) = (spec.width as f64, spec.height as f64);
        let margin = 0.05;
        let span = |a: f64, b: f64| {
            let d = b - a;
            if d > 0.0 {
                d
            } else {
                a.abs().max(1.0) * 1e-6
            }
        };
        let dx = span(e.x0, e.x1);
        let dy = span(e.y0, e.y1);
        let usable_w = w * (1.0 - 2.0 * margin);
        let usable_h = h * (1.0 - 2.0 * margin);
        let (mut sx, mut sy) = (usable_w / dx, usable_h / dy);
        if spec.equal_axes {
            let s = sx.min(sy);
            sx = s;
            sy = s;
        }
        Viewport {
            sx,
            sy,
            cx: 0.5 * (e.x0 + e.x1),
            cy: 0.5 * (e.y0 + e.y1),
            w,
            h,
        }
    }

    fn map(&self, p: ComplexValue) -> (f64, f64) {
        (
            0.5 * self.w + (p.re - self.cx) * self.sx,
            0.5 * self.h - (p.im - self.cy) * self.sy,
        )
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// SVG 1.1 document: one `<g>` per string holding a polyline and its sample dots.
pub fn render_svg(strings: &[TString], spec: &RenderSpec, title: Option<&str>) -> Result<String> {
    spec.validate()?;
    let shift = if spec.subtract_one { 1.0 } else { 0.0 };
    let pts = |s: &TString| -> Vec<ComplexValue> {
        s.values().into_iter().map(|v| v - shift).collect()
    };
    let e = extent(strings.iter().flat_map(|s| pts(s).into_iter()));
    let vp = Viewport::new(e, spec);
    let fmt = |x: f64| format!("{:.3}", x);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-xmin="{}" data-xmax="{}" data-ymin="{}" data-ymax="{}" data-x-scale="{}" data-y-scale="{}" data-subtract-one="{}">"#,
        format_float(e.x0),
        format_float(e.x1),
        format_float(e.y0),
        format_float(e.y1),
        format_float(vp.sx),
        format_float(vp.sy),
        spec.subtract_one,
        w = spec.width,
        h = spec.height,
    );
    if let Some(t) = title {
        let _ = writeln!(svg, "  <title>{}</title>", xml_escape(t));
    }
    let _ = writeln!(
        svg,
        r##"  <rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        spec.width, spec.height
    );

    // axes through the origin when visible
    let (ox, oy) = vp.map(ComplexValue::new(0.0, 0.0));
    let _ = writeln!(svg, r##"  <g class="axes" stroke="#999999" stroke-width="0.5">"##);
    if (0.0..=vp.h).contains(&oy) {
        let _ = writeln!(
            svg,
            r#"    <line x1="0" y1="{y}" x2="{}" y2="{y}"/>"#,
            spec.width,
            y = fmt(oy)
        );
    }
    if (0.0..=vp.w).contains(&ox) {
        let _ = writeln!(
            svg,
            r#"    <line x1="{x}" y1="0" x2="{x}" y2="{}"/>"#,
            spec.height,
            x = fmt(ox)
        );
    }
    let _ = writeln!(svg, "  </g>");

    for (k, s) in strings.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let p = pts(s);
        let _ = writeln!(
            svg,
            r#"  <g class="t-string" data-t="{}" fill="{color}" stroke="{color}">"#,
            format_float(s.t)
        );
        let coords: Vec<String> = p
            .iter()
            .map(|&z| {
                let (x, y) = vp.map(z);
                format!("{},{}", fmt(x), fmt(y))
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"    <polyline fill="none" stroke-width="0.6" points="{}"/>"#,
            coords.join(" ")
        );
        for (z, sample) in p.iter().zip(s.samples()) {
            let (x, y) = vp.map(*z);
            let _ = writeln!(
                svg,
                r#"    <circle cx="{}" cy="{}" r="{}" stroke="none" data-sigma="{}"/>"#,
                fmt(x),
                fmt(y),
                spec.dot_radius,
                format_float(sample.sigma)
            );
        }
        let _ = writeln!(svg, "  </g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Writes `strings` to `path` in the format named by `spec`.
pub fn render_to_file(
    strings: &[TString],
    spec: &RenderSpec,
    title: Option<&str>,
    path: &Path,
) -> Result<()> {
    let body = match spec.format {
        OutputFormat::Csv => csv_string(strings),
        OutputFormat::Svg => render_svg(strings, spec, title)?,
    };
    std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

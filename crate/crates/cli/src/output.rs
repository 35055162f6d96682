//! Stable text formats: JSON with sorted keys, CSV with 17 significant digits and
//! y-up SVG scatter plots.

use std::fmt::Write as _;

use knr_core::{Complex64, Sign};
use serde::Serialize;

use crate::CliError;

/// Pretty JSON with object keys in sorted order. Floats use the shortest
/// representation that parses back to the same value.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(CliError::Json)?;
    let mut s = serde_json::to_string_pretty(&v).map_err(CliError::Json)?;
    s.push('\n');
    Ok(s)
}

/// 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn boundary_csv(rows: impl IntoIterator<Item = (f64, Complex64, Sign)>) -> String {
    let mut out = String::from("theta,re,im,sign\n");
    for (theta, z, sign) in rows {
        let _ = writeln!(out, "{},{},{},{}", fmt_float(theta), fmt_float(z.re), fmt_float(z.im), sign);
    }
    out
}

pub fn cloud_csv(rows: impl IntoIterator<Item = (Complex64, Sign)>) -> String {
    let mut out = String::from("re,im,sign\n");
    for (z, sign) in rows {
        let _ = writeln!(out, "{},{},{}", fmt_float(z.re), fmt_float(z.im), sign);
    }
    out
}

const PLUS_COLOR: &str = "#1f4fd8";
const MINUS_COLOR: &str = "#d81f1f";
const EIGEN_COLOR: &str = "#1a9c3a";

/// A scatter plot in the complex plane: `+` points blue, `-` points red and
/// eigenvalues as green markers. The view box is fitted to the data with 10%
/// padding and the imaginary axis points up.
#[derive(Debug, Clone, Default)]
pub struct Plot {
    pub title: String,
    pub points: Vec<(Complex64, Sign)>,
    pub eigenvalues: Vec<Complex64>,
}

impl Plot {
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let all = self
            .points
            .iter()
            .map(|p| p.0)
            .chain(self.eigenvalues.iter().copied())
            .filter(|z| z.re.is_finite() && z.im.is_finite());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in all {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        if !x0.is_finite() {
            return (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9 * (1.0 + x0.abs().max(y0.abs())));
        let half = |lo: f64, hi: f64| {
            let c = 0.5 * (lo + hi);
            let mut w = (0.5 * (hi - lo)).max(0.025 * span);
            if span < 1e-6 {
                w = w.max(1.0);
            }
            (c - 1.1 * w, c + 1.1 * w)
        };
        let (x0, x1) = half(x0, x1);
        let (y0, y1) = half(y0, y1);
        (x0, x1, y0, y1)
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let (w, h) = (x1 - x0, y1 - y0);
        let r = 0.004 * w.max(h);
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="{:.0}" viewBox="{} {} {} {}">"#,
            800.0 * h / w,
            num(x0),
            num(-y1),
            num(w),
            num(h)
        );
        let _ = writeln!(s, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#, num(x0), num(-y1), num(w), num(h));
        let sw = num(0.5 * r);
        if y0 < 0.0 && y1 > 0.0 {
            let _ = writeln!(s, r##"<line x1="{}" y1="0" x2="{}" y2="0" stroke="#999" stroke-width="{sw}"/>"##, num(x0), num(x1));
        }
        if x0 < 0.0 && x1 > 0.0 {
            let _ = writeln!(s, r##"<line x1="0" y1="{}" x2="0" y2="{}" stroke="#999" stroke-width="{sw}"/>"##, num(-y1), num(-y0));
        }
        for (class, color, sign) in [("plus", PLUS_COLOR, Sign::Plus), ("minus", MINUS_COLOR, Sign::Minus)] {
            let _ = writeln!(s, r#"<g class="{class}" fill="{color}">"#);
            for (z, _) in self.points.iter().filter(|p| p.1 == sign) {
                let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(z.re), num(-z.im), num(r));
            }
            let _ = writeln!(s, "</g>");
        }
        let _ = writeln!(s, r#"<g class="eigenvalues" fill="none" stroke="{EIGEN_COLOR}" stroke-width="{}">"#, num(0.6 * r));
        for z in &self.eigenvalues {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(z.re), num(-z.im), num(2.5 * r));
        }
        let _ = writeln!(s, "</g>");
        s.push_str("</svg>\n");
        s
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" { "0.000000".into() } else { s }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

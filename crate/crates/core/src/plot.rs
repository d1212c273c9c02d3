//! Minimal SVG charts: scatter plots, line plots and scatter matrices.
//!
//! Output is plain SVG text with no external assets; good enough to eyeball
//! experiment results, not a general plotting library.

use std::fmt::Write as _;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A named set of points.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self { name: name.into(), points }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Rect {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

#[derive(Clone, Copy, Debug)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of<'a>(values: impl Iterator<Item = &'a f64>) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &v in values.filter(|v| v.is_finite()) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return Range { lo: 0.0, hi: 1.0 };
        }
        if hi - lo < 1e-12 {
            return Range { lo: lo - 0.5, hi: hi + 0.5 };
        }
        let pad = 0.04 * (hi - lo);
        Range { lo: lo - pad, hi: hi + pad }
    }

    fn map(&self, v: f64, a: f64, b: f64) -> f64 {
        a + (v - self.lo) / (self.hi - self.lo) * (b - a)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
}

fn axes(out: &mut String, r: Rect, xr: Range, yr: Range, ticks: bool) {
    let _ = writeln!(
        out,
        r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        r.x, r.y, r.w, r.h
    );
    if !ticks {
        return;
    }
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let xv = xr.lo + f * (xr.hi - xr.lo);
        let yv = yr.lo + f * (yr.hi - yr.lo);
        let px = r.x + f * r.w;
        let py = r.y + r.h - f * r.h;
        let _ = writeln!(
            out,
            r#"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/><text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            r.y + r.h,
            r.y + r.h + 4.0,
            r.y + r.h + 16.0,
            tick_label(xv)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{py:.1}" x2="{:.1}" y2="{py:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            r.x - 4.0,
            r.x,
            r.x - 6.0,
            py + 4.0,
            tick_label(yv)
        );
    }
}

fn tick_label(v: f64) -> String {
    if v.abs() >= 1000.0 || (v != 0.0 && v.abs() < 0.01) {
        format!("{v:.1e}")
    } else {
        format!("{v:.2}")
    }
}

fn legend(out: &mut String, x: f64, y: f64, names: &[&str]) {
    for (i, name) in names.iter().enumerate() {
        let yy = y + 16.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.1}" y="{:.1}" width="10" height="10" fill="{}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            yy - 9.0,
            PALETTE[i % PALETTE.len()],
            x + 14.0,
            yy,
            escape(name)
        );
    }
}

fn labels(out: &mut String, r: Rect, title: &str, xlabel: &str, ylabel: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="14">{}</text>"#,
        r.x + r.w / 2.0,
        r.y - 12.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        r.x + r.w / 2.0,
        r.y + r.h + 36.0,
        escape(xlabel)
    );
    let cy = r.y + r.h / 2.0;
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{cy:.1}" text-anchor="middle" transform="rotate(-90 {:.1} {cy:.1})">{}</text>"#,
        r.x - 44.0,
        r.x - 44.0,
        escape(ylabel)
    );
}

/// Scatter plot of one or more series on shared axes.
pub fn scatter_svg(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let (w, h) = (640.0, 480.0);
    let r = Rect { x: 70.0, y: 40.0, w: 440.0, h: 380.0 };
    let xr = Range::of(series.iter().flat_map(|s| s.points.iter().map(|p| &p.0)));
    let yr = Range::of(series.iter().flat_map(|s| s.points.iter().map(|p| &p.1)));
    let mut out = String::new();
    header(&mut out, w, h);
    axes(&mut out, r, xr, yr, true);
    labels(&mut out, r, title, xlabel, ylabel);
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for &(x, y) in s.points.iter().filter(|(x, y)| x.is_finite() && y.is_finite()) {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}" fill-opacity="0.5"/>"#,
                xr.map(x, r.x, r.x + r.w),
                yr.map(y, r.y + r.h, r.y)
            );
        }
    }
    let names: Vec<&str> = series.iter().map(|s| s.name.as_str()).collect();
    legend(&mut out, r.x + r.w + 16.0, r.y + 10.0, &names);
    out.push_str("</svg>\n");
    out
}

/// Line plot over categorical x positions (e.g. season keys).
///
/// Non-finite values break the line.
pub fn line_svg(title: &str, categories: &[String], ylabel: &str, series: &[(String, Vec<f64>)]) -> String {
    let (w, h) = (760.0, 480.0);
    let r = Rect { x: 70.0, y: 40.0, w: 560.0, h: 360.0 };
    let yr = Range::of(series.iter().flat_map(|s| s.1.iter()));
    let xr = Range { lo: -0.5, hi: categories.len().max(1) as f64 - 0.5 };
    let mut out = String::new();
    header(&mut out, w, h);
    axes(&mut out, r, Range { lo: 0.0, hi: 1.0 }, yr, false);
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let py = r.y + r.h - f * r.h;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            r.x - 6.0,
            py + 4.0,
            tick_label(yr.lo + f * (yr.hi - yr.lo))
        );
    }
    let step = (categories.len() / 20).max(1);
    for (i, c) in categories.iter().enumerate().step_by(step) {
        let px = xr.map(i as f64, r.x, r.x + r.w);
        let py = r.y + r.h + 12.0;
        let _ = writeln!(
            out,
            r#"<text x="{px:.1}" y="{py:.1}" text-anchor="end" font-size="10" transform="rotate(-45 {px:.1} {py:.1})">{}</text>"#,
            escape(c)
        );
    }
    labels(&mut out, Rect { h: r.h + 30.0, ..r }, title, "", ylabel);
    for (si, (_, values)) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let mut path = String::new();
        let mut pen_down = false;
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                pen_down = false;
                continue;
            }
            let px = xr.map(i as f64, r.x, r.x + r.w);
            let py = yr.map(v, r.y + r.h, r.y);
            let _ = write!(path, "{}{px:.2},{py:.2} ", if pen_down { "L" } else { "M" });
            pen_down = true;
            let _ = writeln!(out, r#"<circle cx="{px:.2}" cy="{py:.2}" r="2.5" fill="{color}"/>"#);
        }
        if !path.is_empty() {
            let _ = writeln!(out, r#"<path d="{}" fill="none" stroke="{color}"/>"#, path.trim_end());
        }
    }
    let names: Vec<&str> = series.iter().map(|s| s.0.as_str()).collect();
    legend(&mut out, r.x + r.w + 16.0, r.y + 10.0, &names);
    out.push_str("</svg>\n");
    out
}

/// Pairwise scatter matrix. `rho[i][j]` is printed in the upper triangle
/// when given.
pub fn scatter_matrix_svg(title: &str, columns: &[(String, Vec<f64>)], rho: Option<&[Vec<f64>]>) -> String {
    let k = columns.len().max(1);
    let cell = 160.0;
    let margin = 50.0;
    let side = margin * 2.0 + cell * k as f64;
    let ranges: Vec<Range> = columns.iter().map(|c| Range::of(c.1.iter())).collect();
    let mut out = String::new();
    header(&mut out, side, side);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        side / 2.0,
        escape(title)
    );
    for (i, (_, ys)) in columns.iter().enumerate() {
        for (j, (xname, xs)) in columns.iter().enumerate() {
            let r = Rect { x: margin + cell * j as f64 + 4.0, y: margin + cell * i as f64 + 4.0, w: cell - 8.0, h: cell - 8.0 };
            axes(&mut out, r, ranges[j], ranges[i], false);
            if i == j {
                let _ = writeln!(
                    out,
                    r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="14">{}</text>"#,
                    r.x + r.w / 2.0,
                    r.y + r.h / 2.0 + 5.0,
                    escape(xname)
                );
                continue;
            }
            if i < j {
                if let Some(rho) = rho {
                    let _ = writeln!(
                        out,
                        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="16">{}</text>"#,
                        r.x + r.w / 2.0,
                        r.y + r.h / 2.0 + 5.0,
                        format_rho(rho[i][j])
                    );
                    continue;
                }
            }
            for (&x, &y) in xs.iter().zip(ys).filter(|(x, y)| x.is_finite() && y.is_finite()) {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="1.8" fill="{}" fill-opacity="0.6"/>"#,
                    ranges[j].map(x, r.x, r.x + r.w),
                    ranges[i].map(y, r.y + r.h, r.y),
                    PALETTE[0]
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn format_rho(v: f64) -> String {
    if v.is_finite() { format!("ρ = {v:.3}") } else { "ρ = NA".into() }
}

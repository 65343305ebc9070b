//! Serialization of a [`Report`] to CSV, JSON or SVG.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::commands::Report;
use crate::config::{Command, RunConfig};

/// Decimal places written for every real.
pub const DECIMALS: usize = 9;

fn fixed(x: f64) -> String {
    let s = format!("{x:.DECIMALS$}");
    // "-0.000000000" and "0.000000000" must not differ between runs.
    if s.trim_start_matches('-')
        .bytes()
        .all(|b| b == b'0' || b == b'.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn rounded(x: f64) -> Value {
    let scale = 10f64.powi(DECIMALS as i32);
    let r = (x * scale).round() / scale;
    let r = if r == 0.0 { 0.0 } else { r };
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

pub fn emit_csv(report: &Report) -> String {
    let mut out = report.columns.join(",");
    out.push('\n');
    for row in &report.rows {
        let cells: Vec<String> = row.iter().map(|&x| fixed(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn emit_json(cfg: &RunConfig, report: &Report) -> String {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = report
                .columns
                .iter()
                .zip(row)
                .map(|(c, &x)| (c.clone(), rounded(x)))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert(
        "config".into(),
        serde_json::to_value(cfg).expect("config is always serializable"),
    );
    doc.insert("rows".into(), Value::Array(rows));
    let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("finite JSON");
    out.push('\n');
    out
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN - (v - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn polyline(svg: &mut String, frame: &Frame, xs: &[f64], ys: &[f64], color: &str, class: &str) {
    let points: Vec<String> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| format!("{:.3},{:.3}", frame.x(x), frame.y(y)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline class="{class}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
        points.join(" ")
    );
}

/// Plot of `K(θ)` (sweep) or the three correlators (correlations).
///
/// Returns `None` for reports without a `theta` column.
pub fn emit_svg(cfg: &RunConfig, report: &Report) -> Option<String> {
    let theta = report.column("theta")?;
    let x0 = *theta.first()?;
    let x1 = *theta.last()?;
    let (y0, y1, series): (f64, f64, Vec<&str>) = match cfg.command {
        Command::Sweep => (-3.2, 1.8, vec!["k"]),
        _ => (-1.1, 1.1, vec!["c12", "c23", "c13"]),
    };
    let frame = Frame { x0, x1, y0, y1 };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    for &(lo, hi) in &report.violations {
        let (a, b) = (frame.x(lo), frame.x(hi));
        let _ = writeln!(
            svg,
            r##"<rect class="violation" x="{a:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="#ffcc66" fill-opacity="0.5"/>"##,
            MARGIN,
            b - a,
            HEIGHT - 2.0 * MARGIN
        );
    }

    let (left, right) = (frame.x(x0), frame.x(x1));
    let (top, bottom) = (frame.y(y1), frame.y(y0));
    let _ = writeln!(
        svg,
        r#"<rect class="axes" x="{left:.3}" y="{top:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    if y0 < 0.0 && y1 > 0.0 {
        let z = frame.y(0.0);
        let _ = writeln!(
            svg,
            r#"<line class="zero" x1="{left:.3}" y1="{z:.3}" x2="{right:.3}" y2="{z:.3}" stroke="gray" stroke-width="0.5"/>"#
        );
    }
    if cfg.command == Command::Sweep {
        let b = frame.y(1.0);
        let _ = writeln!(
            svg,
            r#"<line class="classical-bound" x1="{left:.3}" y1="{b:.3}" x2="{right:.3}" y2="{b:.3}" stroke="black" stroke-dasharray="6,4"/>"#
        );
    }

    for (name, color) in series.iter().zip(COLORS) {
        let ys = report.column(name)?;
        polyline(&mut svg, &frame, &theta, &ys, color, name);
    }

    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-family="sans-serif" font-size="14">θ = ΔE·Δt (rad)</text>"#,
        WIDTH / 2.0,
        HEIGHT - MARGIN / 3.0
    );
    let label = if cfg.command == Command::Sweep {
        "K"
    } else {
        "C12, C23, C13"
    };
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="14">{label}</text>"#,
        MARGIN,
        MARGIN / 2.0
    );
    for (v, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="{anchor}" font-family="sans-serif" font-size="12">{:.3}</text>"#,
            frame.x(v),
            bottom + 16.0,
            v
        );
    }
    for v in [y0, y1] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end" font-family="sans-serif" font-size="12">{v:.1}</text>"#,
            left - 6.0,
            frame.y(v) + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

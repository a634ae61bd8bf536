//! Minimal SVG line plots of table columns.

use crate::table::Table;
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub x: String,
    pub ys: Vec<String>,
    /// Columns whose distinct values split the rows into separate curves.
    pub group_by: Vec<String>,
    pub log_x: bool,
    pub log_y: bool,
}

impl PlotSpec {
    pub fn new(x: &str, ys: &[&str]) -> Self {
        Self {
            x: x.to_string(),
            ys: ys.iter().map(|s| s.to_string()).collect(),
            group_by: Vec::new(),
            log_x: false,
            log_y: false,
        }
    }

    pub fn group_by(mut self, cols: &[&str]) -> Self {
        self.group_by = cols.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn log_x(mut self) -> Self {
        self.log_x = true;
        self
    }

    pub fn log_y(mut self) -> Self {
        self.log_y = true;
        self
    }
}

const W: f64 = 720.0;
const H: f64 = 440.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

struct Curve {
    label: String,
    points: Vec<(f64, f64)>,
}

fn collect_curves(table: &Table, spec: &PlotSpec) -> Vec<Curve> {
    let Some(xi) = table.column_index(&spec.x) else {
        return Vec::new();
    };
    let gi: Vec<usize> = spec.group_by.iter().filter_map(|g| table.column_index(g)).collect();
    let mut curves: Vec<Curve> = Vec::new();
    for y in &spec.ys {
        let Some(yi) = table.column_index(y) else { continue };
        for row in &table.rows {
            let key: Vec<String> = gi
                .iter()
                .map(|&g| format!("{}={}", table.columns[g], row[g].as_f64().map_or(String::new(), |v| format!("{v:.4}"))))
                .collect();
            let label = if key.is_empty() { y.clone() } else { format!("{y} {}", key.join(" ")) };
            let (Some(x), Some(v)) = (row[xi].as_f64(), row[yi].as_f64()) else { continue };
            let tx = if spec.log_x { x.log10() } else { x };
            let ty = if spec.log_y { v.abs().log10() } else { v };
            if !tx.is_finite() || !ty.is_finite() {
                continue;
            }
            match curves.iter_mut().find(|c| c.label == label) {
                Some(c) => c.points.push((tx, ty)),
                None => curves.push(Curve {
                    label,
                    points: vec![(tx, ty)],
                }),
            }
        }
    }
    curves
}

fn bounds(curves: &[Curve]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in curves.iter().flat_map(|c| &c.points) {
        b = (b.0.min(*x), b.1.max(*x), b.2.min(*y), b.3.max(*y));
    }
    if !(b.1 > b.0) {
        b = (b.0 - 0.5, b.0 + 0.5, b.2, b.3);
    }
    if !(b.3 > b.2) {
        b = (b.0, b.1, b.2 - 0.5, b.2 + 0.5);
    }
    b
}

pub fn render(table: &Table, spec: &PlotSpec) -> String {
    let curves = collect_curves(table, spec);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    let (pw, ph) = (W - 2.0 * MARGIN, H - 2.0 * MARGIN);
    writeln!(out, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#).unwrap();
    if curves.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let (x0, x1, y0, y1) = bounds(&curves);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * ph;
    let axis = |v: f64, log: bool| if log { format!("1e{v:.1}") } else { format!("{v:.3e}") };
    for (v, anchor, x, y) in [
        (x0, "start", MARGIN, H - MARGIN + 16.0),
        (x1, "end", W - MARGIN, H - MARGIN + 16.0),
    ] {
        writeln!(out, r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{}</text>"#, axis(v, spec.log_x)).unwrap();
    }
    for (v, y) in [(y0, H - MARGIN), (y1, MARGIN + 10.0)] {
        writeln!(out, r#"<text x="{}" y="{y}" text-anchor="end">{}</text>"#, MARGIN - 4.0, axis(v, spec.log_y)).unwrap();
    }
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 20.0, spec.x).unwrap();
    for (i, c) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = c.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#, pts.join(" ")).unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            MARGIN + 8.0,
            MARGIN + 14.0 * (i + 1) as f64,
            c.label
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

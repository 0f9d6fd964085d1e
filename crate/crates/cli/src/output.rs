//! Deterministic CSV tables and self-contained SVG plots (axes plus
//! polylines, no plotting dependency). Float formatting uses the shortest
//! round-trip representation, so identical values always serialize to
//! identical bytes.

use std::fmt::Write as _;

/// A rectangular table with a fixed header; rows are written in insertion
/// order.
pub struct CsvTable {
    pub name: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(name: impl Into<String>, header: &[&str]) -> Self {
        CsvTable {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: &[CsvCell]) {
        assert_eq!(cells.len(), self.header.len(), "row width mismatch");
        self.rows
            .push(cells.iter().map(|c| c.render()).collect());
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Column of f64 values parsed back out (plot helper).
    pub fn column(&self, idx: usize) -> Vec<f64> {
        self.rows
            .iter()
            .filter_map(|r| r[idx].parse::<f64>().ok())
            .collect()
    }
}

pub enum CsvCell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl CsvCell {
    fn render(&self) -> String {
        match self {
            CsvCell::Int(v) => v.to_string(),
            CsvCell::Float(v) => format!("{v}"),
            CsvCell::Text(s) => s.clone(),
        }
    }
}

pub fn int(v: i64) -> CsvCell {
    CsvCell::Int(v)
}

pub fn num(v: f64) -> CsvCell {
    CsvCell::Float(v)
}

pub fn text(s: impl Into<String>) -> CsvCell {
    CsvCell::Text(s.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log10,
}

/// One polyline series.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Minimal SVG line plot: one coordinate frame, labelled corners, one
/// polyline per series.
pub struct Plot {
    pub title: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub series: Vec<Series>,
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1b6ca8", "#c0392b", "#1e8449", "#7d3c98"];

impl Plot {
    pub fn render(&self) -> String {
        let map = |v: f64, scale: Scale| -> Option<f64> {
            match scale {
                Scale::Linear => Some(v),
                Scale::Log10 => (v > 0.0).then(|| v.log10()),
            }
        };
        let mut pts: Vec<Vec<(f64, f64)>> = Vec::new();
        for s in &self.series {
            let mapped: Vec<(f64, f64)> = s
                .points
                .iter()
                .filter_map(|&(x, y)| Some((map(x, self.x_scale)?, map(y, self.y_scale)?)))
                .collect();
            pts.push(mapped);
        }
        let all: Vec<(f64, f64)> = pts.iter().flatten().copied().collect();
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &all {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() || x1 <= x0 {
            x0 = 0.0;
            x1 = 1.0;
        }
        if !y0.is_finite() || y1 <= y0 {
            let c = if y0.is_finite() { y0 } else { 0.0 };
            y0 = c - 1.0;
            y1 = c + 1.0;
        }
        let sx = (W - 2.0 * MARGIN) / (x1 - x0);
        let sy = (H - 2.0 * MARGIN) / (y1 - y0);
        let px = |x: f64| MARGIN + (x - x0) * sx;
        let py = |y: f64| H - MARGIN - (y - y0) * sy;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
        );
        let _ = writeln!(svg, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
            W / 2.0,
            xml_escape(&self.title)
        );
        // Axes.
        let _ = writeln!(
            svg,
            "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>",
            m = MARGIN,
            b = H - MARGIN,
            r = W - MARGIN
        );
        let _ = writeln!(
            svg,
            "<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>",
            m = MARGIN,
            t = MARGIN,
            b = H - MARGIN
        );
        let fmt_tick = |v: f64, scale: Scale| -> String {
            match scale {
                Scale::Linear => format!("{v:.4}"),
                Scale::Log10 => format!("1e{v:.2}"),
            }
        };
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\">{}</text>",
            MARGIN,
            H - MARGIN + 16.0,
            fmt_tick(x0, self.x_scale)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            W - MARGIN,
            H - MARGIN + 16.0,
            fmt_tick(x1, self.x_scale)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            MARGIN - 4.0,
            H - MARGIN,
            fmt_tick(y0, self.y_scale)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            MARGIN - 4.0,
            MARGIN + 10.0,
            fmt_tick(y1, self.y_scale)
        );
        for (i, series) in pts.iter().enumerate() {
            if series.is_empty() {
                continue;
            }
            let color = COLORS[i % COLORS.len()];
            let path: Vec<String> = series
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            let _ = writeln!(
                svg,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                path.join(" ")
            );
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"{color}\">{}</text>",
                W - MARGIN - 160.0,
                MARGIN + 16.0 * (i as f64 + 1.0),
                xml_escape(&self.series[i].label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rendering_is_stable() {
        let mut t = CsvTable::new("demo", &["k", "value"]);
        t.push(&[int(1), num(0.5)]);
        t.push(&[int(2), num(1.0 / 3.0)]);
        let r1 = t.render();
        assert!(r1.starts_with("k,value\n1,0.5\n"));
        assert_eq!(r1, t.render());
    }

    #[test]
    fn plot_renders_without_points() {
        let p = Plot {
            title: "empty".into(),
            x_scale: Scale::Linear,
            y_scale: Scale::Log10,
            series: vec![Series {
                label: "nothing".into(),
                points: vec![],
            }],
        };
        let svg = p.render();
        assert!(svg.contains("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }
}

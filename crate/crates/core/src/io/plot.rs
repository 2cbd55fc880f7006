//! Minimal standalone SVG scatter plots of a results table.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::io::Read;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XAxis {
    /// Position in the table; `spectrum-NNN` ids use NNN.
    TopologyIndex,
    AvgPathLength,
    NaturalConnectivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YAxis {
    Gsr,
    GsTime,
    Winners,
    TradeOff,
}

impl XAxis {
    pub const ALL: [XAxis; 3] = [XAxis::TopologyIndex, XAxis::AvgPathLength, XAxis::NaturalConnectivity];

    pub fn as_str(self) -> &'static str {
        match self {
            XAxis::TopologyIndex => "topology-index",
            XAxis::AvgPathLength => "avg-path-length",
            XAxis::NaturalConnectivity => "natural-connectivity",
        }
    }

    fn column(self) -> &'static str {
        match self {
            XAxis::TopologyIndex => "topology_id",
            XAxis::AvgPathLength => "L",
            XAxis::NaturalConnectivity => "natural_connectivity",
        }
    }

    fn label(self) -> &'static str {
        match self {
            XAxis::TopologyIndex => "Topology index",
            XAxis::AvgPathLength => "Average path length",
            XAxis::NaturalConnectivity => "Natural connectivity",
        }
    }
}

impl YAxis {
    pub const ALL: [YAxis; 4] = [YAxis::Gsr, YAxis::GsTime, YAxis::Winners, YAxis::TradeOff];

    pub fn as_str(self) -> &'static str {
        match self {
            YAxis::Gsr => "gsr",
            YAxis::GsTime => "gs-time",
            YAxis::Winners => "winners",
            YAxis::TradeOff => "trade-off",
        }
    }

    fn column(self) -> &'static str {
        match self {
            YAxis::Gsr => "gsr",
            YAxis::GsTime => "gs_time",
            YAxis::Winners => "winners_mean",
            YAxis::TradeOff => "trade_off",
        }
    }

    fn label(self) -> &'static str {
        match self {
            YAxis::Gsr => "GSR",
            YAxis::GsTime => "GS time",
            YAxis::Winners => "Winners",
            YAxis::TradeOff => "Trade-off",
        }
    }
}

macro_rules! axis_traits {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $t {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                let wanted = s.trim().to_ascii_lowercase().replace('_', "-");
                <$t>::ALL
                    .into_iter()
                    .find(|a| a.as_str() == wanted)
                    .ok_or_else(|| {
                        let names: Vec<_> = <$t>::ALL.iter().map(|a| a.as_str()).collect();
                        Error::invalid(format!("unknown axis `{s}` (expected one of {})", names.join(", ")))
                    })
            }
        }
    };
}

axis_traits!(XAxis);
axis_traits!(YAxis);

/// One panel per y metric, all sharing the x axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotSpec {
    pub x_axis: XAxis,
    pub y_axes: Vec<YAxis>,
}

impl PlotSpec {
    pub fn new(x_axis: XAxis, y_axes: Vec<YAxis>) -> Self {
        PlotSpec { x_axis, y_axes }
    }

    pub fn validate(&self) -> Result<()> {
        if self.y_axes.is_empty() {
            return Err(Error::invalid("plot needs at least one y axis"));
        }
        Ok(())
    }
}

const WIDTH: f64 = 760.0;
const PANEL_HEIGHT: f64 = 250.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;

const KIND_COLORS: [(&str, &str); 3] = [
    ("core-periphery", "#d62728"),
    ("ring-core-star", "#1f77b4"),
    ("multi-ring", "#2ca02c"),
];
const OTHER_COLOR: &str = "#555555";

fn color_for(kind: &str) -> &'static str {
    KIND_COLORS
        .iter()
        .find(|(k, _)| *k == kind)
        .map_or(OTHER_COLOR, |(_, c)| c)
}

struct Point {
    x: f64,
    y: Option<f64>,
    series: usize,
    color: &'static str,
}

fn parse_number(column: &str, row: usize, value: &str) -> Result<Option<f64>> {
    if value.trim().is_empty() {
        return Ok(None);
    }
    value
        .trim()
        .parse::<f64>()
        .map(Some)
        .map_err(|_| Error::parse(row, format!("bad number `{value}` in column `{column}`")))
}

/// "Nice" tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .into_iter()
        .map(|m| m * magnitude)
        .find(|s| raw <= *s)
        .unwrap_or(10.0 * magnitude);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        let pad = if lo.abs() > 1e-12 { lo.abs() * 0.1 } else { 1.0 };
        return (lo - pad, hi + pad);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

fn marker(out: &mut String, class: &str, shape: usize, x: f64, y: f64, color: &str) {
    let r = 3.5;
    match shape % 4 {
        0 => writeln!(out, r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{color}"/>"#),
        1 => writeln!(
            out,
            r#"<rect class="{class}" x="{:.2}" y="{:.2}" width="{}" height="{}" fill="{color}"/>"#,
            x - r,
            y - r,
            2.0 * r,
            2.0 * r
        ),
        2 => writeln!(
            out,
            r#"<polygon class="{class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}"/>"#,
            x,
            y - r * 1.2,
            x - r * 1.2,
            y + r,
            x + r * 1.2,
            y + r
        ),
        _ => writeln!(
            out,
            r#"<polygon class="{class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="{color}"/>"#,
            x,
            y - r * 1.3,
            x + r * 1.3,
            y,
            x,
            y + r * 1.3,
            x - r * 1.3,
            y
        ),
    }
    .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render a results CSV as an SVG document.
pub fn render_plot<R: Read>(input: R, spec: &PlotSpec) -> Result<String> {
    spec.validate()?;
    let mut reader = csv::ReaderBuilder::new().from_reader(input);
    let headers = reader.headers()?.clone();
    let mut points: Vec<Vec<Point>> = spec.y_axes.iter().map(|_| Vec::new()).collect();
    let mut series_labels: Vec<String> = Vec::new();

    if !headers.is_empty() {
        let index = |c: &str| -> Result<usize> {
            headers
                .iter()
                .position(|h| h == c)
                .ok_or_else(|| Error::MissingColumn(c.to_string()))
        };
        let x_col = index(spec.x_axis.column())?;
        let y_cols = spec
            .y_axes
            .iter()
            .map(|y| index(y.column()))
            .collect::<Result<Vec<_>>>()?;
        let death_col = index("death_fraction")?;
        let kind_col = headers.iter().position(|h| h == "topology_kind");

        let mut topology_order: HashMap<String, usize> = HashMap::new();
        for (k, record) in reader.records().enumerate() {
            let record = record?;
            let line = k + 2;
            let field = |c: usize| record.get(c).unwrap_or("");
            let x = match spec.x_axis {
                XAxis::TopologyIndex => {
                    let id = field(x_col);
                    let next = topology_order.len();
                    let ordinal = *topology_order.entry(id.to_string()).or_insert(next);
                    id.strip_prefix("spectrum-")
                        .and_then(|d| d.parse::<usize>().ok())
                        .unwrap_or(ordinal) as f64
                }
                _ => match parse_number(spec.x_axis.column(), line, field(x_col))? {
                    Some(x) => x,
                    None => continue,
                },
            };
            let death = field(death_col).trim().to_string();
            let series = match series_labels.iter().position(|d| *d == death) {
                Some(s) => s,
                None => {
                    series_labels.push(death);
                    series_labels.len() - 1
                }
            };
            let color = kind_col.map_or(OTHER_COLOR, |c| color_for(field(c)));
            for (panel, (&col, y)) in y_cols.iter().zip(&spec.y_axes).enumerate() {
                points[panel].push(Point {
                    x,
                    y: parse_number(y.column(), line, field(col))?,
                    series,
                    color,
                });
            }
        }
    }

    let height = TOP + spec.y_axes.len() as f64 * PANEL_HEIGHT;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = PANEL_HEIGHT - BOTTOM - TOP;
    let (x_lo, x_hi) = range(points.iter().flatten().map(|p| p.x));

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    for (panel, y_axis) in spec.y_axes.iter().enumerate() {
        let top = TOP + panel as f64 * PANEL_HEIGHT;
        let (y_lo, y_hi) = range(points[panel].iter().filter_map(|p| p.y));
        let px = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
        let py = |y: f64| top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

        writeln!(s, r#"<g class="panel" id="panel-{}">"#, y_axis.as_str()).unwrap();
        writeln!(
            s,
            r#"<rect x="{LEFT}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        )
        .unwrap();
        for t in ticks(x_lo, x_hi) {
            let x = px(t);
            let y = top + plot_h;
            writeln!(s, r#"<line x1="{x:.2}" y1="{y}" x2="{x:.2}" y2="{}" stroke="black"/>"#, y + 4.0).unwrap();
            writeln!(
                s,
                r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
                y + 16.0,
                fmt_tick(t)
            )
            .unwrap();
        }
        for t in ticks(y_lo, y_hi) {
            let y = py(t);
            writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 4.0).unwrap();
            writeln!(
                s,
                r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                y + 4.0,
                fmt_tick(t)
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            top + plot_h + 34.0,
            spec.x_axis.label()
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            top + plot_h / 2.0,
            top + plot_h / 2.0,
            y_axis.label()
        )
        .unwrap();
        for p in &points[panel] {
            if let Some(y) = p.y {
                marker(&mut s, "point", p.series, px(p.x), py(y), p.color);
            }
        }
        writeln!(s, "</g>").unwrap();
    }

    // legend
    let lx = WIDTH - RIGHT + 20.0;
    let mut ly = TOP + 10.0;
    writeln!(s, r#"<g class="legend">"#).unwrap();
    for (kind, color) in KIND_COLORS {
        writeln!(s, r#"<rect x="{lx}" y="{}" width="10" height="10" fill="{color}"/>"#, ly - 8.0).unwrap();
        writeln!(s, r#"<text x="{}" y="{ly}">{kind}</text>"#, lx + 16.0).unwrap();
        ly += 16.0;
    }
    ly += 8.0;
    for (k, label) in series_labels.iter().enumerate() {
        marker(&mut s, "legend-marker", k, lx + 5.0, ly - 4.0, "black");
        writeln!(s, r#"<text x="{}" y="{ly}">death {}</text>"#, lx + 16.0, escape(label)).unwrap();
        ly += 16.0;
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

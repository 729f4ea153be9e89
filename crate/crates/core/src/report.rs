//! CSV and SVG renderings of grids, tornado results and traces.
//!
//! Heatmap annotations use the same formatter as the grid CSV, so a cell
//! reads identically in both.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::mc::{CdpTraceRow, GridResult, OptionTraceRow, PerpTraceRow, Trace, TornadoResult};
use crate::stats::BatchStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridMetric {
    /// Liquidation probability in percent.
    LiqProb,
    MedianRpnl,
}

impl GridMetric {
    pub fn value(self, stats: &BatchStats) -> f64 {
        match self {
            GridMetric::LiqProb => 100.0 * stats.liquidation_probability,
            GridMetric::MedianRpnl => stats.median_rpnl,
        }
    }

    fn title(self) -> &'static str {
        match self {
            GridMetric::LiqProb => "Liquidation probability (%)",
            GridMetric::MedianRpnl => "Median realized PnL",
        }
    }
}

/// One decimal, with negative zero printed as `0.0`.
pub fn fmt1(x: f64) -> String {
    let s = format!("{x:.1}");
    if s == "-0.0" {
        "0.0".into()
    } else {
        s
    }
}

fn axis_label(x: f64) -> String {
    // shortest round-trip form: 2 -> "2", 0.04 -> "0.04"
    format!("{x}")
}

/// Rows are sigma, columns leverage: `sigma,L=2,L=5,...`.
pub fn grid_csv(grid: &GridResult, metric: GridMetric) -> String {
    let mut out = String::from("sigma");
    for &l in &grid.leverage_axis {
        let _ = write!(out, ",L={}", axis_label(l));
    }
    out.push('\n');
    for (i, &sigma) in grid.sigma_axis.iter().enumerate() {
        out.push_str(&axis_label(sigma));
        for cell in &grid.cells[i] {
            out.push(',');
            out.push_str(&fmt1(metric.value(cell)));
        }
        out.push('\n');
    }
    out
}

pub fn perp_trace_csv(rows: &[PerpTraceRow]) -> String {
    let mut out = String::from("step,price,upnl,fees_cum,equity,margin_req,status,upnl_net\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.step,
            r.price,
            r.upnl,
            r.fees_cum,
            r.equity,
            r.margin_req,
            r.status.as_str(),
            r.upnl_net
        );
    }
    out
}

pub fn option_trace_csv(rows: &[OptionTraceRow]) -> String {
    let mut out = String::from("step,price,mark_value,upnl,fees_cum,status\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.step,
            r.price,
            r.mark_value,
            r.upnl,
            r.fees_cum,
            r.status.as_str()
        );
    }
    out
}

pub fn cdp_trace_csv(rows: &[CdpTraceRow]) -> String {
    let mut out = String::from("step,p_coll,p_under,cr,collateral_units,synth_units,status\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.step,
            r.p_coll,
            r.p_under,
            r.cr,
            r.collateral_units,
            r.synth_units,
            r.status.as_str()
        );
    }
    out
}

pub fn trace_csv(trace: &Trace) -> String {
    match trace {
        Trace::Perp(rows) => perp_trace_csv(rows),
        Trace::Option(rows) => option_trace_csv(rows),
        Trace::Cdp(rows) => cdp_trace_csv(rows),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Linear blend between two RGB colours, `t` in [0, 1].
fn blend(a: (u8, u8, u8), b: (u8, u8, u8), t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let mix = |x: u8, y: u8| (f64::from(x) + (f64::from(y) - f64::from(x)) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

const CELL_W: f64 = 72.0;
const CELL_H: f64 = 40.0;
const LEFT: f64 = 80.0;
const TOP: f64 = 60.0;

/// Annotated heatmap, one `<text class="cell">` per grid cell.
pub fn render_heatmap(grid: &GridResult, metric: GridMetric) -> Result<String> {
    let rows = grid.sigma_axis.len();
    let cols = grid.leverage_axis.len();
    if rows == 0 || cols == 0 || grid.cells.len() != rows || grid.cells.iter().any(|r| r.len() != cols) {
        return Err(SimError::Empty("grid"));
    }
    let values: Vec<Vec<f64>> = grid
        .cells
        .iter()
        .map(|r| r.iter().map(|c| metric.value(c)).collect())
        .collect();
    let (lo, hi) = match metric {
        GridMetric::LiqProb => (0.0, 100.0),
        GridMetric::MedianRpnl => values
            .iter()
            .flatten()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v))),
    };
    let span = if hi > lo { hi - lo } else { 1.0 };
    let width = LEFT + CELL_W * cols as f64 + 20.0;
    let height = TOP + CELL_H * rows as f64 + 50.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        width / 2.0,
        metric.title()
    );
    for (j, &l) in grid.leverage_axis.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text class="col-label" x="{}" y="{}" text-anchor="middle">L={}</text>"#,
            LEFT + CELL_W * (j as f64 + 0.5),
            TOP - 10.0,
            axis_label(l)
        );
    }
    for (i, &sigma) in grid.sigma_axis.iter().enumerate() {
        let y = TOP + CELL_H * i as f64;
        let _ = writeln!(
            svg,
            r#"<text class="row-label" x="{}" y="{}" text-anchor="end">σ={}</text>"#,
            LEFT - 8.0,
            y + CELL_H / 2.0 + 4.0,
            axis_label(sigma)
        );
        for (j, &v) in values[i].iter().enumerate() {
            let x = LEFT + CELL_W * j as f64;
            let t = (v - lo) / span;
            let fill = match metric {
                GridMetric::LiqProb => blend((255, 247, 236), (179, 0, 0), t),
                GridMetric::MedianRpnl => blend((33, 102, 172), (247, 247, 247), t),
            };
            let ink = if t > 0.6 && metric == GridMetric::LiqProb { "#ffffff" } else { "#111111" };
            let _ = writeln!(
                svg,
                r##"<rect x="{x}" y="{y}" width="{CELL_W}" height="{CELL_H}" fill="{fill}" stroke="#ffffff"/>"##
            );
            let _ = writeln!(
                svg,
                r#"<text class="cell" x="{}" y="{}" text-anchor="middle" fill="{ink}">{}</text>"#,
                x + CELL_W / 2.0,
                y + CELL_H / 2.0 + 4.0,
                fmt1(v)
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">leverage</text>"#,
        LEFT + CELL_W * cols as f64 / 2.0,
        TOP + CELL_H * rows as f64 + 30.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

const BAR_H: f64 = 28.0;
const HALF_W: f64 = 220.0;
const LABEL_W: f64 = 190.0;

/// Horizontal tornado chart centred on the baseline, bars in result order.
pub fn render_tornado(result: &TornadoResult) -> Result<String> {
    if result.bars.is_empty() {
        return Err(SimError::Empty("tornado result"));
    }
    let extent = result
        .bars
        .iter()
        .map(|b| b.impact())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let scale = HALF_W / extent;
    let centre = LABEL_W + HALF_W;
    let width = LABEL_W + 2.0 * HALF_W + 40.0;
    let height = TOP + BAR_H * result.bars.len() as f64 + 60.0;
    let bottom = TOP + BAR_H * result.bars.len() as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">Liquidation probability sensitivity, ±{}% shocks (baseline {}%)</text>"#,
        width / 2.0,
        fmt1(100.0 * result.shock),
        fmt1(100.0 * result.baseline_liq_prob)
    );
    for (i, bar) in result.bars.iter().enumerate() {
        let y = TOP + BAR_H * i as f64;
        let _ = writeln!(
            svg,
            r#"<text class="bar-label" data-parameter="{0}" x="{1}" y="{2}" text-anchor="end">{0}</text>"#,
            escape(bar.parameter.name()),
            LABEL_W - 10.0,
            y + BAR_H / 2.0 + 4.0
        );
        for (delta, fill, leg) in [(bar.delta_low, "#4575b4", "low"), (bar.delta_high, "#d73027", "high")] {
            let w = delta.abs() * scale;
            let x = if delta < 0.0 { centre - w } else { centre };
            let _ = writeln!(
                svg,
                r#"<rect class="bar {leg}" x="{x}" y="{}" width="{w}" height="{}" fill="{fill}"><title>{} {leg}: {} p.p.</title></rect>"#,
                y + 4.0,
                BAR_H - 8.0,
                escape(bar.parameter.name()),
                fmt1(delta)
            );
        }
    }
    let _ = writeln!(
        svg,
        r##"<line class="baseline" x1="{centre}" y1="{}" x2="{centre}" y2="{}" stroke="#333333" stroke-dasharray="4 3"/>"##,
        TOP - 6.0,
        bottom + 6.0
    );
    for tick in [-extent, -extent / 2.0, 0.0, extent / 2.0, extent] {
        let _ = writeln!(
            svg,
            r#"<text class="tick" x="{}" y="{}" text-anchor="middle">{}</text>"#,
            centre + tick * scale,
            bottom + 22.0,
            fmt1(tick)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{centre}" y="{}" text-anchor="middle">change in liquidation probability (p.p.)</text>"#,
        bottom + 42.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

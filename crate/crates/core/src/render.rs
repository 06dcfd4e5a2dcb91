//! Deterministic SVG rendering of barcodes: horizontal bars grouped by
//! degree, x-axis from 0 to the plot radius, essential bars drawn to the
//! edge with an arrowhead.

use std::fmt::Write as _;

use crate::persistence::Barcode;

const WIDTH: f64 = 800.0;
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 36.0;
const BAR_HEIGHT: f64 = 6.0;
const BAR_GAP: f64 = 4.0;
const GROUP_GAP: f64 = 18.0;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Renders a barcode as a standalone SVG document. `rmax` fixes the x-axis
/// end; when absent it falls back to 1.05x the largest finite value (or 1.0
/// for an empty barcode).
pub fn barcode_to_svg(barcode: &Barcode, rmax: Option<f64>) -> String {
    let cap = rmax.unwrap_or_else(|| {
        let max_finite = barcode
            .intervals()
            .iter()
            .flat_map(|i| [i.birth, i.death])
            .filter(|v| v.is_finite())
            .fold(0.0f64, f64::max);
        if max_finite > 0.0 {
            max_finite * 1.05
        } else {
            1.0
        }
    });

    let degrees: Vec<usize> = {
        let mut d: Vec<usize> = barcode.intervals().iter().map(|i| i.dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let n_bars = barcode.len();
    let height = MARGIN_TOP
        + MARGIN_BOTTOM
        + (n_bars as f64) * (BAR_HEIGHT + BAR_GAP)
        + (degrees.len() as f64) * GROUP_GAP
        + 10.0;
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let x_of = |v: f64| MARGIN_LEFT + (v / cap).clamp(0.0, 1.0) * plot_w;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.1}" viewBox="0 0 {WIDTH} {height:.1}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let mut y = MARGIN_TOP;
    for &degree in &degrees {
        let color = PALETTE[degree % PALETTE.len()];
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" fill="{color}" font-weight="bold">H{degree}</text>"#,
            8.0,
            y + 10.0
        );
        let mut bars: Vec<_> = barcode.in_dim(degree).collect();
        bars.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        for bar in bars {
            let x0 = x_of(bar.birth);
            let x1 = if bar.is_essential() { MARGIN_LEFT + plot_w } else { x_of(bar.death) };
            let w = (x1 - x0).max(0.5);
            let _ = writeln!(
                svg,
                r#"<rect class="bar" x="{x0:.2}" y="{y:.2}" width="{w:.2}" height="{BAR_HEIGHT}" fill="{color}"/>"#
            );
            if bar.is_essential() {
                let ax = MARGIN_LEFT + plot_w;
                let ay = y + BAR_HEIGHT / 2.0;
                let _ = writeln!(
                    svg,
                    r#"<path class="arrow" d="M {ax:.2} {:.2} L {:.2} {ay:.2} L {ax:.2} {:.2} Z" fill="{color}"/>"#,
                    ay - 5.0,
                    ax + 10.0,
                    ay + 5.0
                );
            }
            y += BAR_HEIGHT + BAR_GAP;
        }
        y += GROUP_GAP;
    }

    // x axis with five ticks
    let axis_y = height - MARGIN_BOTTOM + 6.0;
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN_LEFT}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="black"/>"#,
        MARGIN_LEFT + plot_w
    );
    for t in 0..=5 {
        let v = cap * (t as f64) / 5.0;
        let x = x_of(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{axis_y:.1}" x2="{x:.2}" y2="{:.1}" stroke="black"/>"#,
            axis_y + 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.1}" text-anchor="middle">{v:.3}</text>"#,
            axis_y + 16.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

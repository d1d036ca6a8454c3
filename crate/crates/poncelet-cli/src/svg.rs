//! Minimal SVG rendering: a fixed 1000x1000 viewport over the square
//! [-1.3, 1.3]^2, the unit circle, curves as open polylines, and polygons
//! as closed polylines.

use poncelet_core::C64;
use std::fmt::Write as _;

const SIZE: f64 = 1000.0;
const EXTENT: f64 = 1.3;

fn map(p: C64) -> (f64, f64) {
    let x = (p.re + EXTENT) / (2.0 * EXTENT) * SIZE;
    // SVG's y axis points down.
    let y = (EXTENT - p.im) / (2.0 * EXTENT) * SIZE;
    (x, y)
}

fn polyline(out: &mut String, pts: &[C64], close: bool, color: &str) {
    if pts.is_empty() {
        return;
    }
    out.push_str("  <path d=\"");
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = map(p);
        let _ = write!(out, "{}{x:.2} {y:.2}", if i == 0 { "M" } else { " L" });
    }
    if close {
        out.push_str(" Z");
    }
    let _ = writeln!(out, "\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>");
}

/// Render curves (open polylines) and polygons (closed polylines) over the
/// unit circle.
pub fn render(curves: &[Vec<C64>], polygons: &[Vec<C64>]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" \
         viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let (cx, cy) = map(C64::new(0.0, 0.0));
    let r = SIZE / (2.0 * EXTENT);
    let _ = writeln!(
        out,
        "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"1\"/>"
    );
    let palette = ["#c0392b", "#2471a3", "#1e8449", "#9b59b6", "#d68910"];
    for (i, curve) in curves.iter().enumerate() {
        polyline(&mut out, curve, true, palette[i % palette.len()]);
    }
    for poly in polygons {
        polyline(&mut out, poly, true, "#7f8c8d");
    }
    out.push_str("</svg>\n");
    out
}

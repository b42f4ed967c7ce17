//! Minimal self-contained SVG line charts: fixed viewbox, data-driven axis
//! ticks, no external plotting dependency.

use std::fmt::Write as _;

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub points: &'a [(f64, f64)],
}

const WIDTH: f64 = 840.0;
const HEIGHT: f64 = 520.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 44.0;
const MARGIN_B: f64 = 52.0;

/// Tick positions on a 1-2-5 ladder covering [lo, hi].
fn ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = (hi - lo).max(1e-12);
    let raw = span / target.max(2) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| span / s <= target as f64)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        // Snap near-zero ticks produced by rounding.
        out.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    out
}

fn extent(series: &[Series<'_>], axis: usize) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in series {
        for p in s.points {
            let v = if axis == 0 { p.0 } else { p.1 };
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        hi = lo + 1.0;
    }
    (lo, hi)
}

pub fn line_chart(title: &str, x_label: &str, series: &[Series<'_>]) -> String {
    let (x0, x1) = extent(series, 0);
    let (mut y0, mut y1) = extent(series, 1);
    // Breathing room above and below the curves.
    let pad = 0.04 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    let px = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * (WIDTH - MARGIN_L - MARGIN_R);
    let py = |y: f64| HEIGHT - MARGIN_B - (y - y0) / (y1 - y0) * (HEIGHT - MARGIN_T - MARGIN_B);

    let mut svg = String::with_capacity(16 * 1024);
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>
<text x="{tx}" y="24" text-anchor="middle" font-size="16">{title}</text>
"#,
        tx = WIDTH / 2.0,
    );

    // Grid and axis labels.
    for t in ticks(x0, x1, 8) {
        let x = px(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{t0:.2}" x2="{x:.2}" y2="{t1:.2}" stroke="#ddd"/><text x="{x:.2}" y="{ty:.2}" text-anchor="middle">{t}</text>"#,
            t0 = MARGIN_T,
            t1 = HEIGHT - MARGIN_B,
            ty = HEIGHT - MARGIN_B + 18.0,
        );
    }
    for t in ticks(y0, y1, 6) {
        let y = py(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{x0p:.2}" y1="{y:.2}" x2="{x1p:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{tx:.2}" y="{ty:.2}" text-anchor="end">{t}</text>"#,
            x0p = MARGIN_L,
            x1p = WIDTH - MARGIN_R,
            tx = MARGIN_L - 8.0,
            ty = y + 4.0,
        );
    }
    // Axes frame and x label.
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{w:.2}" height="{h:.2}" fill="none" stroke="#333"/><text x="{cx:.2}" y="{cy:.2}" text-anchor="middle">{x_label}</text>"#,
        w = WIDTH - MARGIN_L - MARGIN_R,
        h = HEIGHT - MARGIN_T - MARGIN_B,
        cx = MARGIN_L + (WIDTH - MARGIN_L - MARGIN_R) / 2.0,
        cy = HEIGHT - 14.0,
    );

    // Curves.
    for s in series {
        let mut path = String::with_capacity(s.points.len() * 14);
        for (i, (x, y)) in s.points.iter().enumerate() {
            let _ = write!(path, "{}{:.2},{:.2}", if i == 0 { "" } else { " " }, px(*x), py(*y));
        }
        let _ = writeln!(
            svg,
            r#"<polyline points="{path}" fill="none" stroke="{}" stroke-width="1.8"/>"#,
            s.color
        );
    }

    // Legend, top-right inside the frame.
    for (i, s) in series.iter().enumerate() {
        let y = MARGIN_T + 18.0 + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{y:.2}" x2="{lx2:.2}" y2="{y:.2}" stroke="{}" stroke-width="2.5"/><text x="{tx:.2}" y="{ty:.2}">{}</text>"#,
            s.color,
            s.label,
            lx = WIDTH - MARGIN_R - 170.0,
            lx2 = WIDTH - MARGIN_R - 140.0,
            tx = WIDTH - MARGIN_R - 132.0,
            ty = y + 4.0,
        );
    }
    svg.push_str("</svg>\n");
    svg
}

//! Minimal static SVG line plots, written directly so the binary stays
//! dependency-free. CSV is the canonical artifact; these are companions for
//! a quick look.

/// Canvas and plot-area geometry (viewBox units).
const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 780.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 430.0;

/// Largest number of path points; longer series are downsampled (the CSV
/// keeps every sample).
const MAX_PATH_POINTS: usize = 2000;

/// Renders one `(x, y)` series as a static SVG plot with axes, ticks, and a
/// caption. `log_x` switches the x axis to a log₁₀ scale (all x must be
/// positive in that case).
pub fn line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    points: &[(f64, f64)],
    log_x: bool,
) -> String {
    assert!(!points.is_empty(), "cannot plot an empty series");
    let xmap = |x: f64| if log_x { x.log10() } else { x };
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (0.0f64, f64::NEG_INFINITY);
    for &(x, y) in points {
        let xv = xmap(x);
        x_min = x_min.min(xv);
        x_max = x_max.max(xv);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if x_max <= x_min {
        x_max = x_min + 1.0;
    }
    if y_max <= y_min {
        y_max = y_min + 1.0;
    }
    let y_pad = 0.05 * (y_max - y_min);
    let y_top = y_max + y_pad;
    let px = |x: f64| LEFT + (xmap(x) - x_min) / (x_max - x_min) * (RIGHT - LEFT);
    let py = |y: f64| BOTTOM - (y - y_min) / (y_top - y_min) * (BOTTOM - TOP);

    let mut svg = String::with_capacity(64 * 1024);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{:.0}\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
        (LEFT + RIGHT) / 2.0,
        escape(title)
    ));

    // Ticks and grid lines.
    for (value, label) in x_ticks(x_min, x_max, log_x) {
        let x = LEFT + (value - x_min) / (x_max - x_min) * (RIGHT - LEFT);
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{TOP}\" x2=\"{x:.1}\" y2=\"{BOTTOM}\" stroke=\"#e4e4e4\"/>\n\
             <line x1=\"{x:.1}\" y1=\"{BOTTOM}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n\
             <text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{label}</text>\n",
            BOTTOM + 6.0,
            BOTTOM + 20.0,
        ));
    }
    for i in 0..=4 {
        let y_val = y_min + (y_top - y_min) * i as f64 / 4.0;
        let y = py(y_val);
        svg.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{y:.1}\" x2=\"{RIGHT}\" y2=\"{y:.1}\" stroke=\"#e4e4e4\"/>\n\
             <line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{LEFT}\" y2=\"{y:.1}\" stroke=\"black\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
            LEFT - 6.0,
            LEFT - 9.0,
            y + 4.0,
            fmt_tick(y_val),
        ));
    }

    // Axes, labels, series.
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{BOTTOM}\" stroke=\"black\"/>\n\
         <line x1=\"{LEFT}\" y1=\"{BOTTOM}\" x2=\"{RIGHT}\" y2=\"{BOTTOM}\" stroke=\"black\"/>\n\
         <text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"middle\">{}</text>\n\
         <text x=\"22\" y=\"{:.0}\" text-anchor=\"middle\" transform=\"rotate(-90 22 {:.0})\">{}</text>\n",
        (LEFT + RIGHT) / 2.0,
        HEIGHT - 14.0,
        escape(x_label),
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0,
        escape(y_label),
    ));
    let stride = points.len().div_ceil(MAX_PATH_POINTS).max(1);
    let mut path = String::with_capacity(16 * points.len().min(MAX_PATH_POINTS));
    for (i, &(x, y)) in points.iter().step_by(stride).enumerate() {
        path.push_str(if i == 0 { "M" } else { " L" });
        path.push_str(&format!("{:.2} {:.2}", px(x), py(y)));
    }
    svg.push_str(&format!(
        "<path d=\"{path}\" fill=\"none\" stroke=\"#27627e\" stroke-width=\"1.5\"/>\n</svg>\n"
    ));
    svg
}

/// Tick positions in mapped coordinates with display labels.
fn x_ticks(x_min: f64, x_max: f64, log_x: bool) -> Vec<(f64, String)> {
    if log_x {
        // One tick per decade inside the range.
        let lo = x_min.ceil() as i64;
        let hi = x_max.floor() as i64;
        (lo..=hi)
            .map(|d| (d as f64, fmt_tick(10f64.powi(d as i32))))
            .collect()
    } else {
        (0..=4)
            .map(|i| {
                let v = x_min + (x_max - x_min) * i as f64 / 4.0;
                (v, fmt_tick(v))
            })
            .collect()
    }
}

/// Compact tick label: plain decimals in a sane range, otherwise powers of
/// ten notation.
fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (0.01..1e5).contains(&a) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.2e}")
    }
}

/// Escapes the XML special characters that can appear in labels.
fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

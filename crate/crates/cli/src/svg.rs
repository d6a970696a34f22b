//! Self-contained SVG line plots, no rendering dependency.

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 40.0;

/// Renders labelled traces over a shared index axis into one SVG document.
/// Output is deterministic for identical inputs.
pub fn line_plot(title: &str, traces: &[(String, Vec<f64>)]) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    let mut x_len = 0usize;
    for (_, values) in traces {
        x_len = x_len.max(values.len());
        for &v in values {
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }
    }
    if !y_min.is_finite() || !y_max.is_finite() {
        y_min = -1.0;
        y_max = 1.0;
    }
    if y_max - y_min < 1e-12 {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    let x_of = |i: usize| {
        if x_len <= 1 {
            MARGIN_LEFT
        } else {
            MARGIN_LEFT + plot_w * (i as f64) / ((x_len - 1) as f64)
        }
    };
    let y_of = |v: f64| MARGIN_TOP + plot_h * (1.0 - (v - y_min) / (y_max - y_min));

    let mut svg = String::new();
    svg.push_str(&format!(
        r#"<svg version="1.1" width="{WIDTH}" height="{HEIGHT}" xmlns="http://www.w3.org/2000/svg">"#
    ));
    svg.push('\n');
    svg.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg.push('\n');
    svg.push_str(&format!(
        r#"<text x="{:.2}" y="24" font-family="monospace" font-size="16" fill="black">{}</text>"#,
        MARGIN_LEFT,
        xml_escape(title)
    ));
    svg.push('\n');

    // frame and zero line
    svg.push_str(&format!(
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#333333" stroke-width="1"/>"##,
        MARGIN_LEFT, MARGIN_TOP, plot_w, plot_h
    ));
    svg.push('\n');
    if y_min < 0.0 && y_max > 0.0 {
        let y0 = y_of(0.0);
        svg.push_str(&format!(
            r##"<line x1="{:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="#bbbbbb" stroke-width="1" stroke-dasharray="4 3"/>"##,
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w
        ));
        svg.push('\n');
    }
    // axis extremes
    svg.push_str(&format!(
        r##"<text x="8" y="{:.2}" font-family="monospace" font-size="11" fill="#333333">{:.3}</text>"##,
        MARGIN_TOP + 10.0,
        y_max
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r##"<text x="8" y="{:.2}" font-family="monospace" font-size="11" fill="#333333">{:.3}</text>"##,
        MARGIN_TOP + plot_h,
        y_min
    ));
    svg.push('\n');

    for (t, (label, values)) in traces.iter().enumerate() {
        let color = PALETTE[t % PALETTE.len()];
        let mut d = String::new();
        for (i, &v) in values.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{cmd}{:.2} {:.2} ", x_of(i), y_of(v)));
        }
        svg.push_str(&format!(
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            d.trim_end()
        ));
        svg.push('\n');
        let ly = MARGIN_TOP + 16.0 * (t as f64) + 12.0;
        svg.push_str(&format!(
            r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{color}"/>"#,
            MARGIN_LEFT + plot_w - 220.0,
            ly - 9.0
        ));
        svg.push('\n');
        svg.push_str(&format!(
            r#"<text x="{:.2}" y="{ly:.2}" font-family="monospace" font-size="12" fill="black">{}</text>"#,
            MARGIN_LEFT + plot_w - 205.0,
            xml_escape(label)
        ));
        svg.push('\n');
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

//! Self-contained SVG comparison chart: actual demand against the classical and
//! corrected model paths.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::evaluate::EvaluationReport;

pub const WIDTH: f64 = 960.0;
pub const HEIGHT: f64 = 540.0;

const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 120.0;

const ACTUAL_STYLE: &str = r##"stroke="#1b1b1b" stroke-width="2""##;
const CLASSICAL_STYLE: &str = r##"stroke="#1f77b4" stroke-width="2" stroke-dasharray="8 4""##;
const MODIFIED_STYLE: &str = r##"stroke="#d62728" stroke-width="2" stroke-dasharray="10 4 2 4""##;

pub struct PlotInput<'a> {
    pub title: &'a str,
    pub y_label: &'a str,
    pub periods: &'a [String],
    pub actual: &'a [f64],
    pub classical: &'a [f64],
    pub modified: &'a [f64],
    pub report: &'a EvaluationReport,
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

struct Frame {
    n: usize,
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, i: usize) -> f64 {
        LEFT + (WIDTH - LEFT - RIGHT) * i as f64 / (self.n - 1) as f64
    }

    fn y(&self, v: f64) -> f64 {
        let top = TOP;
        let bottom = HEIGHT - BOTTOM;
        bottom - (bottom - top) * (v - self.lo) / (self.hi - self.lo)
    }

    fn points(&self, values: &[f64]) -> String {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{:.2},{:.2}", self.x(i), self.y(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn fmt_number(v: f64) -> String {
    if v.abs() >= 1e6 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.4e}")
    } else {
        format!("{v:.2}")
    }
}

/// Renders the three series as polylines on a 960×540 canvas, scaled to the
/// joint value range (anchored at zero when nothing is negative).
pub fn render_comparison_svg(input: &PlotInput<'_>) -> Result<String> {
    let n = input.actual.len();
    if n < 2 {
        return Err(Error::DegeneratePlot(format!(
            "a comparison plot needs at least 2 observations, got {n}; supply more data"
        )));
    }
    for (name, values) in [("classical", input.classical), ("modified", input.modified)] {
        if values.len() != n {
            return Err(Error::DegeneratePlot(format!(
                "{name} path has {} points, actual has {n}",
                values.len()
            )));
        }
    }
    if input.periods.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: input.periods.len(),
        });
    }
    let all = input
        .actual
        .iter()
        .chain(input.classical)
        .chain(input.modified);
    let (mut lo, mut hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::DegeneratePlot("non-finite values".into()));
    }
    if lo > 0.0 {
        lo = 0.0;
    }
    if hi - lo <= 0.0 {
        lo -= 1.0;
        hi += 1.0;
    }
    let frame = Frame { n, lo, hi };
    let report = input.report;
    let plot_bottom = HEIGHT - BOTTOM;

    let mut svg = String::new();
    let w = &mut svg;
    // writes into a String cannot fail
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(input.title)
    );

    // axes
    let _ = writeln!(
        w,
        r##"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{plot_bottom}" stroke="#444"/>"##
    );
    let _ = writeln!(
        w,
        r##"<line x1="{LEFT}" y1="{plot_bottom}" x2="{:.2}" y2="{plot_bottom}" stroke="#444"/>"##,
        WIDTH - RIGHT
    );
    for v in [lo, (lo + hi) / 2.0, hi] {
        let y = frame.y(v);
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            y + 4.0,
            fmt_number(v)
        );
    }
    for i in [0, n / 2, n - 1] {
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.x(i),
            plot_bottom + 16.0,
            escape(&input.periods[i])
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Period</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        plot_bottom + 34.0
    );
    let _ = writeln!(
        w,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        (TOP + plot_bottom) / 2.0,
        (TOP + plot_bottom) / 2.0,
        escape(input.y_label)
    );

    for (key, values, style) in [
        ("actual", input.actual, ACTUAL_STYLE),
        ("classical", input.classical, CLASSICAL_STYLE),
        ("modified", input.modified, MODIFIED_STYLE),
    ] {
        let _ = writeln!(
            w,
            r#"<polyline data-series="{}" fill="none" {style} points="{}"/>"#,
            key,
            frame.points(values)
        );
    }

    // legend
    let legend_x = WIDTH - RIGHT - 210.0;
    let modified_label = format!("Modified ({})", report.variant_used.as_str());
    for (k, (label, style)) in [
        ("Actual", ACTUAL_STYLE),
        ("Classical", CLASSICAL_STYLE),
        (modified_label.as_str(), MODIFIED_STYLE),
    ]
    .into_iter()
    .enumerate()
    {
        let y = TOP + 12.0 + 18.0 * k as f64;
        let _ = writeln!(
            w,
            r#"<line x1="{legend_x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" {style}/>"#,
            legend_x + 36.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            legend_x + 44.0,
            y + 4.0,
            escape(label)
        );
    }

    // caption
    let improvement = report
        .improvement_percent
        .map_or_else(|| "undefined".to_string(), |p| format!("{p:.2}%"));
    let caption = [
        format!(
            "SSE classical: {}    SSE modified: {}    improvement: {improvement}",
            fmt_number(report.sse_classical),
            fmt_number(report.sse_modified)
        ),
        format!(
            "mode: {}    tail_per: {:.4}    r1: {:.4}    r2: {:.4}    correction: {}",
            report.mode.as_str(),
            report.tail_profile.tail_per,
            report.tail_profile.r1,
            report.tail_profile.r2,
            fmt_number(report.correction_term)
        ),
    ];
    let _ = writeln!(w, r#"<g class="caption">"#);
    for (k, line) in caption.iter().enumerate() {
        let _ = writeln!(
            w,
            r#"<text x="{LEFT}" y="{:.2}">{}</text>"#,
            HEIGHT - 44.0 + 18.0 * k as f64,
            escape(line)
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }

    #[test]
    fn frame_maps_extremes_to_plot_edges() {
        let f = Frame { n: 3, lo: 0.0, hi: 10.0 };
        assert_eq!(f.x(0), LEFT);
        assert_eq!(f.x(2), WIDTH - RIGHT);
        assert_eq!(f.y(0.0), HEIGHT - BOTTOM);
        assert_eq!(f.y(10.0), TOP);
    }
}

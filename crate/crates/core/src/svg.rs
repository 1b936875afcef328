//! Minimal SVG line plots for the CLI's `--svg` output.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;
const COLOURS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Plots each `(label, values)` against `x`, on a log₁₀ vertical axis when
/// `log_y` is set (non-positive values are dropped there).
pub(crate) fn line_plot(title: &str, x: &[f64], series: &[(String, Vec<f64>)], log_y: bool) -> String {
    let tf = |y: f64| if log_y { y.log10() } else { y };
    let usable = |y: f64| y.is_finite() && (!log_y || y > 0.0);

    let (x0, x1) = bounds(x.iter().copied());
    let (y0, y1) = bounds(series.iter().flat_map(|(_, v)| v.iter().copied().filter(|&y| usable(y)).map(tf)));
    let sx = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="black" points="{m},{t} {m},{b} {r},{b}"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let ylab = |v: f64| if log_y { format!("1e{v:.1}") } else { format!("{v:.3e}") };
    let _ = writeln!(out, r#"<text x="5" y="{:.1}">{}</text>"#, sy(y1) + 4.0, ylab(y1));
    let _ = writeln!(out, r#"<text x="5" y="{:.1}">{}</text>"#, sy(y0) + 4.0, ylab(y0));
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">{x0}</text>"#, sx(x0), HEIGHT - MARGIN + 16.0);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{x1}</text>"#,
        sx(x1),
        HEIGHT - MARGIN + 16.0
    );

    for (i, (label, values)) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let points: Vec<String> = x
            .iter()
            .zip(values)
            .filter(|(_, &y)| usable(y))
            .map(|(&xv, &y)| format!("{:.2},{:.2}", sx(xv), sy(tf(y))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = MARGIN + 14.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{colour}">{}</text>"#,
            WIDTH - MARGIN - 100.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-300 {
        let pad = lo.abs().max(1.0) * 1e-3;
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_is_wellformed() {
        let x = vec![0.0, 1.0, 2.0];
        let s = line_plot("t < 2", &x, &[("a".into(), vec![1.0, 2.0, 4.0]), ("b".into(), vec![0.0, 1.0, f64::NAN])], true);
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
        assert!(s.contains("t &lt; 2"));
        assert_eq!(s.matches("<polyline").count(), 3);
    }
}

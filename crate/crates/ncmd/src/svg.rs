//! Static SVG 1.1 plots of |residual| against n on log-log axes.

use std::fmt::Write;

use ncmd_core::diagnostics::{ConvergenceReport, Regime};

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
/// Stand-in for exact zeros, which have no logarithm.
const FLOOR: f64 = 1e-18;

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// One series per (family, x) for LD/MD; for WEAK one series per family
/// holding the sup distance over x.
pub fn residual_series(reports: &[&ConvergenceReport]) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for r in reports {
        if r.regime == Regime::Weak {
            out.push(Series {
                label: format!("{} sup|P-H|", r.family),
                points: r.sup_distance_by_n().into_iter().map(|(n, d)| (n as f64, d)).collect(),
            });
            continue;
        }
        let mut xs: Vec<f64> = r.rows.iter().map(|row| row.x).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        for x in xs {
            out.push(Series {
                label: format!("{} x={x}", r.family),
                points: r.rows_at(x).iter().map(|row| (row.n as f64, row.residual.abs())).collect(),
            });
        }
    }
    out
}

fn span(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let (lo, hi) = (lo.floor(), hi.ceil());
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, lo + 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the series; points with non-finite residuals are dropped and
/// zeros are drawn at 1e-18.
pub fn render(title: &str, series: &[Series]) -> String {
    let logged: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| {
            s.points
                .iter()
                .filter(|(n, r)| *n > 0.0 && r.is_finite())
                .map(|(n, r)| (n.log10(), r.max(FLOOR).log10()))
                .collect()
        })
        .collect();
    let (x0, x1) = span(logged.iter().flatten().map(|p| p.0));
    let (y0, y1) = span(logged.iter().flatten().map(|p| p.1));
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let px = |v: f64| LEFT + (v - x0) / (x1 - x0) * pw;
    let py = |v: f64| TOP + (y1 - v) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">
<title>{}</title>
<rect width="{W}" height="{H}" fill="white"/>
<text x="{}" y="22" text-anchor="middle" font-size="13">{}</text>"#,
        escape(title),
        LEFT + pw / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black" stroke-width="1">
<line class="x-axis" x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/>
<line class="y-axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/>
</g>"#,
        b = TOP + ph,
        r = LEFT + pw
    );
    let xstep = ((x1 - x0) / 8.0).ceil().max(1.0);
    let mut t = x0;
    while t <= x1 + 1e-9 {
        let x = px(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.1}" y1="{b}" x2="{x:.1}" y2="{b5}" stroke="black"/><text x="{x:.1}" y="{bt}" text-anchor="middle">1e{t}</text>"#,
            b = TOP + ph,
            b5 = TOP + ph + 5.0,
            bt = TOP + ph + 18.0
        );
        t += xstep;
    }
    let ystep = ((y1 - y0) / 8.0).ceil().max(1.0);
    let mut t = y0;
    while t <= y1 + 1e-9 {
        let y = py(t);
        let _ = writeln!(
            s,
            r#"<line x1="{l5}" y1="{y:.1}" x2="{LEFT}" y2="{y:.1}" stroke="black"/><text x="{lt}" y="{yt:.1}" text-anchor="end">1e{t}</text>"#,
            l5 = LEFT - 5.0,
            lt = LEFT - 8.0,
            yt = y + 4.0
        );
        t += ystep;
    }
    let _ = writeln!(
        s,
        r#"<text class="x-label" x="{}" y="{}" text-anchor="middle">n</text>
<text class="y-label" x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">|residual|</text>"#,
        LEFT + pw / 2.0,
        H - 10.0,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );
    for (i, (ser, pts)) in series.iter().zip(&logged).enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|(a, b)| format!("{:.2},{:.2}", px(*a), py(*b))).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="series" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
        let ly = TOP + 14.0 * i as f64;
        let lx = LEFT + pw + 10.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 14.0,
            lx + 18.0,
            ly + 4.0,
            escape(&ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_reports(title: &str, reports: &[&ConvergenceReport]) -> String {
    render(title, &residual_series(reports))
}

//! Hand-written SVG figures: one or more square panels of the complex plane.

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::ValueEnum;
use hopspec::seqcore::Branch;
use hopspec::spectra::closed_form_spectrum;
use hopspec::transfer::RegionParams;
use hopspec::Complex64;

const PANEL: f64 = 560.0;
const MARGIN: f64 = 24.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Overlay {
    Annulus,
    Diamond,
    Hole,
    Ellipses,
    None,
}

pub const ALL_OVERLAYS: [Overlay; 4] = [Overlay::Annulus, Overlay::Diamond, Overlay::Hole, Overlay::Ellipses];

/// A polyline drawn over the points.
pub struct Line {
    pub points: Vec<Complex64>,
    pub stroke: &'static str,
    pub width: f64,
    pub dashed: bool,
}

pub struct Panel {
    pub title: String,
    pub points: Vec<Complex64>,
    pub lines: Vec<Line>,
}

/// Guide curves for amplitude `σ`.
pub fn overlay_lines(sigma: f64, overlays: &[Overlay]) -> Vec<Line> {
    let Ok(params) = RegionParams::new(sigma) else { return Vec::new() };
    let circle = |r: f64| -> Vec<Complex64> { (0..=360).map(|k| Complex64::from_polar(r, k as f64 * PI / 180.0)).collect() };
    let mut out = Vec::new();
    let mut overlays = overlays.to_vec();
    overlays.sort();
    overlays.dedup();
    for o in overlays {
        match o {
            Overlay::Annulus => {
                for r in [params.annulus_inner, params.annulus_outer].into_iter().filter(|&r| r > 0.0) {
                    out.push(Line { points: circle(r), stroke: "#2a7f62", width: 0.8, dashed: false });
                }
            }
            Overlay::Diamond => {
                let d = params.diamond;
                let pts = [(d, 0.0), (0.0, d), (-d, 0.0), (0.0, -d), (d, 0.0)];
                out.push(Line {
                    points: pts.iter().map(|&(x, y)| Complex64::new(x, y)).collect(),
                    stroke: "#555555",
                    width: 0.8,
                    dashed: true,
                });
            }
            Overlay::Ellipses => {
                for branch in [Branch::Plus, Branch::Minus] {
                    if let Ok(parts) = closed_form_spectrum(0, branch, sigma, 720) {
                        out.extend(parts.into_iter().map(|points| Line { points, stroke: "#c0392b", width: 0.8, dashed: false }));
                    }
                }
            }
            Overlay::Hole if sigma < 1.0 => {
                let points = (0..=720)
                    .map(|k| {
                        let t = k as f64 * PI / 360.0;
                        Complex64::from_polar(params.hole_radius(t), t)
                    })
                    .collect();
                out.push(Line { points, stroke: "#000000", width: 2.4, dashed: false });
            }
            Overlay::Hole | Overlay::None => {}
        }
    }
    out
}

/// Every `k`-th point, so that at most `max_points` remain.
pub fn thin(points: &[Complex64], max_points: usize) -> Vec<Complex64> {
    let stride = points.len().div_ceil(max_points.max(1)).max(1);
    points.iter().step_by(stride).copied().collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// XML comments may not contain `--`; the exact text is also kept in `<desc>`.
fn comment_safe(s: &str) -> String {
    let mut out = s.replace("--", "\u{2011}\u{2011}");
    if out.ends_with('-') {
        out.push(' ');
    }
    out
}

/// Renders the panels side by side with a shared half-width `extent`.
pub fn render(panels: &[Panel], extent: f64, command: &str, seed: Option<u64>) -> String {
    let width = PANEL * panels.len().max(1) as f64;
    let height = PANEL + 20.0;
    let seed = seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, "<!-- command: {} -->", comment_safe(command));
    let _ = writeln!(s, "<!-- seed: {seed} -->");
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, "<desc>{} (seed {seed})</desc>", escape(command));
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let scale = (PANEL / 2.0 - MARGIN) / extent;
    for (i, panel) in panels.iter().enumerate() {
        let cx = PANEL * (i as f64 + 0.5);
        let cy = 20.0 + PANEL / 2.0;
        let map = |z: Complex64| (cx + z.re * scale, cy - z.im * scale);
        let _ = writeln!(s, r#"<g id="panel{i}">"#);
        let _ = writeln!(
            s,
            r#"<text x="{cx:.1}" y="16" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
            escape(&panel.title)
        );
        let half = extent * scale;
        let _ = writeln!(
            s,
            r##"<path d="M{:.1} {cy:.1}H{:.1}M{cx:.1} {:.1}V{:.1}" stroke="#bbbbbb" stroke-width="0.5" fill="none"/>"##,
            cx - half,
            cx + half,
            cy - half,
            cy + half
        );
        let _ = writeln!(s, r##"<g fill="#1f4e9c" fill-opacity="0.6">"##);
        for &z in &panel.points {
            let (x, y) = map(z);
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="0.7"/>"#);
        }
        let _ = writeln!(s, "</g>");
        for line in &panel.lines {
            let mut d = String::new();
            for (k, &z) in line.points.iter().enumerate() {
                let (x, y) = map(z);
                let _ = write!(d, "{}{x:.2} {y:.2}", if k == 0 { "M" } else { "L" });
            }
            let dash = if line.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                s,
                r#"<path d="{d}" stroke="{}" stroke-width="{}" fill="none"{dash}/>"#,
                line.stroke, line.width
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thinning_keeps_at_most_the_limit() {
        let pts: Vec<Complex64> = (0..1001).map(|k| Complex64::new(k as f64, 0.0)).collect();
        assert_eq!(thin(&pts, 100).len(), 91);
        assert_eq!(thin(&pts, 5000).len(), 1001);
    }

    #[test]
    fn command_comment_is_well_formed() {
        let svg = render(&[], 2.0, "hopspec pi-union --sigma 0.5 -", Some(3));
        let comment = svg.lines().nth(1).unwrap();
        assert!(!comment[4..comment.len() - 3].contains("--"));
        assert!(svg.contains("<desc>hopspec pi-union --sigma 0.5 - (seed 3)</desc>"));
    }

    #[test]
    fn hole_is_skipped_at_unit_sigma() {
        assert!(overlay_lines(1.0, &[Overlay::Hole]).is_empty());
        assert_eq!(overlay_lines(0.5, &[Overlay::Hole, Overlay::Annulus]).len(), 3);
    }
}

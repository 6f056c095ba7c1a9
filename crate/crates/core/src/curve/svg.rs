//! Standalone SVG figures: the conic dashed, its parallel lines solid, singular points as markers.

use std::fmt::Write as _;
use std::path::Path;

use super::{BBox, Point2, TracedCurve};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Marker {
    pub at: Point2,
    pub label: String,
}

/// What to draw.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Figure {
    /// Drawn dashed.
    pub conic: Vec<TracedCurve>,
    /// Drawn solid.
    pub offsets: Vec<TracedCurve>,
    /// Thin grid lines (mesh overlays).
    pub grid: Vec<TracedCurve>,
    pub markers: Vec<Marker>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgStyle {
    /// Width of the drawing in pixels; the height follows the window's aspect ratio.
    pub width: f64,
    pub conic_color: String,
    pub offset_color: String,
    pub marker_color: String,
    pub stroke_width: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width: 640.0,
            conic_color: "#555555".into(),
            offset_color: "#1f4e9c".into(),
            marker_color: "#c0392b".into(),
            stroke_width: 1.5,
        }
    }
}

fn window(fig: &Figure) -> Option<BBox> {
    let mut acc: Option<BBox> = None;
    for c in fig.conic.iter().chain(&fig.offsets).chain(&fig.grid) {
        acc = Some(acc.map_or(c.bbox, |b| b.union(&c.bbox)));
    }
    for m in &fig.markers {
        let pad = BBox { xmin: m.at.x - 0.5, xmax: m.at.x + 0.5, ymin: m.at.y - 0.5, ymax: m.at.y + 0.5 };
        acc = Some(acc.map_or(pad, |b| b.union(&pad)));
    }
    acc
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// The SVG document as a string; identical inputs give identical bytes.
pub fn render_svg(fig: &Figure, style: &SvgStyle) -> Result<String> {
    let bb = window(fig).ok_or_else(|| Error::Precondition("nothing to plot: no curves and no markers".into()))?;
    let w = style.width;
    let scale = w / (bb.xmax - bb.xmin);
    let h = (bb.ymax - bb.ymin) * scale;
    let sx = |x: f64| (x - bb.xmin) * scale;
    let sy = |y: f64| (bb.ymax - y) * scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    // axes
    let _ = writeln!(out, r##"<g class="axes" stroke="#999999" stroke-width="0.75">"##);
    if bb.ymin <= 0.0 && bb.ymax >= 0.0 {
        let _ = writeln!(out, r#"<line x1="0" y1="{:.3}" x2="{w:.3}" y2="{:.3}"/>"#, sy(0.0), sy(0.0));
    }
    if bb.xmin <= 0.0 && bb.xmax >= 0.0 {
        let _ = writeln!(out, r#"<line x1="{:.3}" y1="0" x2="{:.3}" y2="{h:.3}"/>"#, sx(0.0), sx(0.0));
    }
    let _ = writeln!(out, "</g>");
    let mut path = |curves: &[TracedCurve], class: &str, color: &str, width: f64, dash: &str| {
        for c in curves {
            for line in &c.polylines {
                if line.len() < 2 {
                    continue;
                }
                let mut d = String::new();
                for (k, p) in line.iter().enumerate() {
                    let _ = write!(d, "{}{:.3},{:.3}", if k == 0 { "M" } else { " L" }, sx(p.x), sy(p.y));
                }
                let _ = writeln!(
                    out,
                    r#"<path class="{class}" d="{d}" fill="none" stroke="{color}" stroke-width="{width:.2}"{dash}/>"#
                );
            }
        }
    };
    path(&fig.grid, "mesh", &style.conic_color, style.stroke_width / 3.0, "");
    path(&fig.conic, "conic", &style.conic_color, style.stroke_width, r#" stroke-dasharray="6,4""#);
    path(&fig.offsets, "offset", &style.offset_color, style.stroke_width, "");
    for m in &fig.markers {
        let (x, y) = (sx(m.at.x), sy(m.at.y));
        let _ = writeln!(
            out,
            r#"<g class="marker"><circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{}"/><text x="{:.3}" y="{:.3}" font-size="11" font-family="sans-serif">{}</text></g>"#,
            style.marker_color,
            x + 5.0,
            y - 5.0,
            escape(&m.label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Writes [`render_svg`] to `path`.
pub fn plot_svg(fig: &Figure, style: &SvgStyle, path: &Path) -> Result<()> {
    let text = render_svg(fig, style)?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_figure_is_rejected() {
        assert!(render_svg(&Figure::default(), &SvgStyle::default()).is_err());
    }

    #[test]
    fn markers_and_paths_are_emitted() {
        let bbox = BBox::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let curve = TracedCurve { polylines: vec![vec![Point2::new(-1.0, 0.0), Point2::new(1.0, 0.5)]], bbox, resolution: 8 };
        let fig = Figure {
            conic: vec![curve.clone()],
            offsets: vec![curve],
            grid: vec![],
            markers: vec![Marker { at: Point2::new(0.0, 0.25), label: "S<1>".into() }],
        };
        let a = render_svg(&fig, &SvgStyle::default()).unwrap();
        assert_eq!(a, render_svg(&fig, &SvgStyle::default()).unwrap());
        assert_eq!(a.matches(r#"class="marker""#).count(), 1);
        assert_eq!(a.matches("stroke-dasharray").count(), 1);
        assert!(a.contains("S&lt;1&gt;"));
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.svg");
        plot_svg(&fig, &SvgStyle::default(), &p).unwrap();
        assert_eq!(std::fs::read_to_string(p).unwrap(), a);
    }
}

//! Static SVG pictures of configurations, loop traces and homotopy frames.
//!
//! Layout: each panel has one row per distinct base point, ordered by the
//! rank of the point; the horizontal axis is the `R` (or `(0, 1)`)
//! coordinate. Segments are rectangles, points of `R x Y` are circles and
//! scanned labels `[x, s]` are diamonds at horizontal position `s`.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::configs::{PointConfig, SegmentConfig, SuspensionLabel};
use crate::error::Result;
use crate::scanning::{alpha_eval, retraction_homotopy, total_h_map, PathPoint, ScanConfig};
use crate::spaces::{BaseSpace, LabelSpace, Pointed, ProductPoint, Scalar};

const WIDTH: f64 = 640.0;
const MARGIN_LEFT: f64 = 120.0;
const MARGIN_RIGHT: f64 = 20.0;
const ROW: f64 = 28.0;
const HEADER: f64 = 24.0;
const FOOTER: f64 = 22.0;
const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Glyph {
    Rect { row: usize, x0: Scalar, x1: Scalar, label: String },
    Circle { row: usize, x: Scalar, label: String },
    Diamond { row: usize, x: Scalar, label: String },
    /// A vertical line across all rows, e.g. the parameter `s` of a path point.
    Rule { x: Scalar, label: String },
}

/// One picture: a caption, row titles and glyphs over a horizontal domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub caption: String,
    pub rows: Vec<String>,
    pub domain: (Scalar, Scalar),
    pub glyphs: Vec<Glyph>,
}

/// Short human-readable text for a serialized point or label: tags are
/// dropped, `{num, den}` becomes `p/q`, the basepoint becomes `*`.
pub fn short_text<T: Serialize>(v: &T) -> String {
    fn go(v: &Value) -> String {
        match v {
            Value::Null => "*".into(),
            Value::Bool(b) => b.to_string(),
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            Value::Array(a) => {
                let parts: Vec<String> = a.iter().map(go).collect();
                format!("({})", parts.join(", "))
            }
            Value::Object(m) => {
                if let (Some(Value::String(n)), Some(Value::String(d))) = (m.get("num"), m.get("den")) {
                    return if d == "1" { n.clone() } else { format!("{n}/{d}") };
                }
                if let (Some(_), Some(inner)) = (m.get("model"), m.get("value")) {
                    return go(inner);
                }
                let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {}", go(v))).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }
    go(&serde_json::to_value(v).unwrap_or(Value::Null))
}

fn rows_of<'a, P: Ord + Serialize + 'a>(ys: impl Iterator<Item = &'a P>) -> (Vec<&'a P>, Vec<String>) {
    let mut keys: Vec<&P> = ys.collect();
    keys.sort();
    keys.dedup();
    let names = keys.iter().map(short_text).collect();
    (keys, names)
}

fn rank<P: Ord>(keys: &[&P], y: &P) -> usize {
    keys.binary_search(&y).expect("row key present")
}

fn unit_domain() -> (Scalar, Scalar) {
    (Scalar::zero(), Scalar::one())
}

/// `[0, 1]` if all values fit, otherwise the data range padded by one unit.
fn domain_of<'a>(xs: impl Iterator<Item = &'a Scalar>) -> (Scalar, Scalar) {
    let mut lo: Option<Scalar> = None;
    let mut hi: Option<Scalar> = None;
    for x in xs {
        lo = Some(lo.map_or(x.clone(), |l| l.min(x.clone())));
        hi = Some(hi.map_or(x.clone(), |h| h.max(x.clone())));
    }
    match (lo, hi) {
        (Some(l), Some(h)) if !(l.in_unit_interval() && h.in_unit_interval()) => {
            (l - Scalar::one(), h + Scalar::one())
        }
        _ => unit_domain(),
    }
}

pub fn segment_panel<P, L>(w: &SegmentConfig<P, L>, caption: &str) -> Panel
where
    P: Ord + Serialize,
    L: Serialize,
{
    let (keys, rows) = rows_of(w.iter().map(|s| &s.y));
    let glyphs = w
        .iter()
        .map(|s| Glyph::Rect {
            row: rank(&keys, &s.y),
            x0: s.a.clone(),
            x1: s.b.clone(),
            label: short_text(&s.x),
        })
        .collect();
    let domain = domain_of(w.iter().flat_map(|s| [&s.a, &s.b]));
    Panel { caption: caption.into(), rows, domain, glyphs }
}

pub fn point_panel<P, L>(kappa: &PointConfig<ProductPoint<P>, L>, caption: &str) -> Panel
where
    P: Ord + Serialize,
    L: Serialize,
{
    let (keys, rows) = rows_of(kappa.iter().map(|e| &e.y.base));
    let glyphs = kappa
        .iter()
        .map(|e| Glyph::Circle {
            row: rank(&keys, &e.y.base),
            x: e.y.coords.first().cloned().unwrap_or_else(Scalar::zero),
            label: short_text(&e.x),
        })
        .collect();
    let domain = domain_of(kappa.iter().filter_map(|e| e.y.coords.first()));
    Panel { caption: caption.into(), rows, domain, glyphs }
}

pub fn scan_panel<P, L>(z: &ScanConfig<P, L>, caption: &str) -> Panel
where
    P: Ord + Serialize,
    L: Serialize,
{
    let (keys, rows) = rows_of(z.iter().map(|e| &e.y));
    let glyphs = z
        .iter()
        .filter_map(|e| match &e.x {
            SuspensionLabel::Point { x, s } => Some(Glyph::Diamond {
                row: rank(&keys, &e.y),
                x: s.first().cloned().unwrap_or_else(Scalar::half),
                label: short_text(x),
            }),
            SuspensionLabel::Basepoint => None,
        })
        .collect();
    Panel { caption: caption.into(), rows, domain: unit_domain(), glyphs }
}

pub fn path_panel<P, L>(p: &PathPoint<P, L>, caption: &str) -> Panel
where
    P: Ord + Clone + Serialize,
    L: Ord + Pointed + Clone + Serialize,
{
    let mut panel = segment_panel(p.config(), caption);
    panel.domain = unit_domain();
    panel.glyphs.push(Glyph::Rule { x: p.param().clone(), label: format!("s = {}", p.param()) });
    panel
}

/// The loop `α(w)` observed at each time: `w` itself, then one panel per `t`.
pub fn loop_frames<P, L>(w: &SegmentConfig<P, L>, times: &[Scalar]) -> Vec<Panel>
where
    P: Ord + Clone + Serialize,
    L: Ord + Pointed + Clone + Serialize,
{
    let mut out = vec![segment_panel(w, "w")];
    for t in times {
        let mut p = scan_panel(&alpha_eval(w, t), &format!("alpha(w)({t})"));
        p.glyphs.push(Glyph::Rule { x: t.clone(), label: String::new() });
        // Show where the slice sits on w as well.
        out[0].glyphs.push(Glyph::Rule { x: t.clone(), label: format!("t = {t}") });
        out.push(p);
    }
    out
}

/// Frames of the deformation of `w` onto `φ̄(φ(w))`.
pub fn retraction_frames<Y, L>(
    space: &Y,
    w: &SegmentConfig<Y::Point, L>,
    times: &[Scalar],
) -> Result<Vec<Panel>>
where
    Y: BaseSpace,
    L: Ord + Pointed + Clone + Serialize,
{
    times
        .iter()
        .map(|t| Ok(segment_panel(&retraction_homotopy(space, t, w)?, &format!("t = {t}"))))
        .collect()
}

/// Frames of `H_t(p)`.
pub fn total_h_frames<P, X>(labels: &X, p: &PathPoint<P, X::Label>, times: &[Scalar]) -> Vec<Panel>
where
    P: Ord + Clone + Serialize,
    X: LabelSpace,
{
    times
        .iter()
        .map(|t| path_panel(&total_h_map(labels, t, p), &format!("H_t, t = {t}")))
        .collect()
}

fn color(label: &str) -> &'static str {
    let h = label.bytes().fold(0u32, |h, b| h.wrapping_mul(31).wrapping_add(u32::from(b)));
    PALETTE[(h % PALETTE.len() as u32) as usize]
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn panel_height(p: &Panel) -> f64 {
    HEADER + ROW * p.rows.len().max(1) as f64 + FOOTER
}

/// Renders panels stacked vertically into one SVG document.
pub fn to_svg(panels: &[Panel]) -> String {
    let height: f64 = panels.iter().map(panel_height).sum::<f64>().max(HEADER + ROW + FOOTER);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let mut top = 0.0;
    for p in panels {
        draw_panel(&mut out, p, top);
        top += panel_height(p);
    }
    out.push_str("</svg>\n");
    out
}

fn draw_panel(out: &mut String, p: &Panel, top: f64) {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let (lo, hi) = (p.domain.0.to_f64(), p.domain.1.to_f64());
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x_of = |v: &Scalar| MARGIN_LEFT + (v.to_f64() - lo) / span * plot_w;
    let rows = p.rows.len().max(1) as f64;
    let y0 = top + HEADER;
    let y1 = y0 + ROW * rows;
    let _ = writeln!(out, r#"<g class="panel">"#);
    let _ = writeln!(out, r#"<text x="4" y="{:.2}">{}</text>"#, top + 15.0, escape(&p.caption));
    // Axes.
    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{MARGIN_LEFT:.2}" y1="{y1:.2}" x2="{:.2}" y2="{y1:.2}" stroke="#333333"/>"##,
        WIDTH - MARGIN_RIGHT
    );
    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{MARGIN_LEFT:.2}" y1="{y0:.2}" x2="{MARGIN_LEFT:.2}" y2="{y1:.2}" stroke="#333333"/>"##
    );
    for (v, anchor) in [(&p.domain.0, "start"), (&p.domain.1, "end")] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{}</text>"#,
            x_of(v),
            y1 + 14.0,
            escape(&v.to_string())
        );
    }
    for (k, name) in p.rows.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="4" y="{:.2}">{}</text>"#,
            y0 + ROW * k as f64 + ROW / 2.0 + 4.0,
            escape(name)
        );
    }
    for g in &p.glyphs {
        match g {
            Glyph::Rect { row, x0, x1, label } => {
                let y = y0 + ROW * *row as f64 + 5.0;
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}" fill-opacity="0.7"><title>{}</title></rect>"#,
                    x_of(x0),
                    (x_of(x1) - x_of(x0)).max(0.5),
                    ROW - 10.0,
                    color(label),
                    escape(label)
                );
            }
            Glyph::Circle { row, x, label } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="{}"><title>{}</title></circle>"#,
                    x_of(x),
                    y0 + ROW * *row as f64 + ROW / 2.0,
                    color(label),
                    escape(label)
                );
            }
            Glyph::Diamond { row, x, label } => {
                let (cx, cy) = (x_of(x), y0 + ROW * *row as f64 + ROW / 2.0);
                let _ = writeln!(
                    out,
                    r#"<polygon points="{:.2},{cy:.2} {cx:.2},{:.2} {:.2},{cy:.2} {cx:.2},{:.2}" fill="{}"><title>{}</title></polygon>"#,
                    cx - 6.0,
                    cy - 6.0,
                    cx + 6.0,
                    cy + 6.0,
                    color(label),
                    escape(label)
                );
            }
            Glyph::Rule { x, label } => {
                let _ = writeln!(
                    out,
                    r##"<line x1="{0:.2}" y1="{y0:.2}" x2="{0:.2}" y2="{y1:.2}" stroke="#888888" stroke-dasharray="3,3"><title>{1}</title></line>"##,
                    x_of(x),
                    escape(label)
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{DiscreteLabel, Site};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn empty_config_has_axes_only() {
        let w: SegmentConfig<Site, DiscreteLabel> = SegmentConfig::empty();
        let svg = to_svg(&[segment_panel(&w, "empty")]);
        assert!(svg.contains(r#"class="axis""#));
        assert!(!svg.contains("<rect x="));
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn one_rect_per_segment_in_rank_rows() {
        let w = SegmentConfig::from_tuples([
            (q(1, 8), q(3, 8), Site(5), DiscreteLabel(1)),
            (q(5, 8), q(7, 8), Site(5), DiscreteLabel(2)),
            (q(1, 4), q(3, 4), Site(2), DiscreteLabel(1)),
        ])
        .unwrap();
        let p = segment_panel(&w, "w");
        assert_eq!(p.rows, vec!["2", "5"]);
        let rows: Vec<usize> = p
            .glyphs
            .iter()
            .map(|g| match g {
                Glyph::Rect { row, .. } => *row,
                _ => panic!("segments render as rectangles"),
            })
            .collect();
        assert_eq!(rows, vec![0, 1, 1]);
        let svg = to_svg(&[p]);
        assert_eq!(svg.matches("<rect x=").count(), 3);
        assert_eq!(svg, to_svg(&[segment_panel(&w, "w")]));
    }

    #[test]
    fn short_text_forms() {
        assert_eq!(short_text(&q(3, 4)), "3/4");
        assert_eq!(short_text(&Site(3)), "3");
        let b: SuspensionLabel<DiscreteLabel> = SuspensionLabel::Basepoint;
        assert_eq!(short_text(&b), "*");
    }

    #[test]
    fn loop_frames_count() {
        let w = SegmentConfig::from_tuples([(q(1, 4), q(3, 4), Site(0), DiscreteLabel(1))]).unwrap();
        let frames = loop_frames(&w, &[q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(frames.len(), 4);
        assert_eq!(frames[2].glyphs.len(), 2);
        assert_eq!(frames[1].glyphs.len(), 1);
    }
}

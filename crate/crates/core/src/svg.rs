//! SVG rendering of a polygon and, optionally, an embedding.
//!
//! Output is a pure function of its inputs. The y axis is flipped so the
//! picture matches the usual math orientation.

use crate::embedding::Embedding;
use crate::geom::Point;
use std::fmt::Write as _;

pub fn render_svg(polygon: &[Point], emb: Option<&Embedding>) -> String {
    let flip = |p: &Point| (p.x as f64, (-p.y) as f64);
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in polygon {
        let (x, y) = flip(p);
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    if polygon.is_empty() {
        (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
    }
    let w = (max_x - min_x).max(1.0);
    let h = (max_y - min_y).max(1.0);
    let (mx, my) = (w * 0.05, h * 0.05);
    let scale = w.max(h);
    let stroke = scale * 0.004;
    let font = scale * 0.03;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.3} {:.3} {:.3} {:.3}">"#,
        min_x - mx,
        min_y - my,
        w + 2.0 * mx,
        h + 2.0 * my
    );
    let outline: Vec<String> = polygon
        .iter()
        .map(|p| {
            let (x, y) = flip(p);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        s,
        r##"  <polygon points="{}" fill="#f4f4f4" stroke="#222222" stroke-width="{:.3}"/>"##,
        outline.join(" "),
        stroke
    );
    if let Some(emb) = emb {
        let _ = writeln!(
            s,
            r##"  <g stroke="#c0392b" stroke-width="{:.3}" stroke-linecap="round">"##,
            stroke * 1.5
        );
        for &(a, b) in &emb.edges {
            let (Some(pa), Some(pb)) = (polygon.get(a), polygon.get(b)) else {
                continue;
            };
            let ((x1, y1), (x2, y2)) = (flip(pa), flip(pb));
            let _ = writeln!(s, r#"    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
        }
        let _ = writeln!(s, "  </g>");
        let _ = writeln!(s, r##"  <g fill="#c0392b">"##);
        for &v in &emb.mapping {
            if let Some(p) = polygon.get(v) {
                let (x, y) = flip(p);
                let _ = writeln!(
                    s,
                    r#"    <circle cx="{x}" cy="{y}" r="{:.3}"/>"#,
                    stroke * 2.5
                );
            }
        }
        let _ = writeln!(s, "  </g>");
    }
    let _ = writeln!(
        s,
        r##"  <g font-family="monospace" font-size="{font:.3}" fill="#1f4e79">"##
    );
    for (i, p) in polygon.iter().enumerate() {
        let (x, y) = flip(p);
        let _ = writeln!(
            s,
            r#"    <text x="{:.3}" y="{:.3}">{i}</text>"#,
            x + font * 0.3,
            y - font * 0.3
        );
    }
    let _ = writeln!(s, "  </g>");
    s.push_str("</svg>\n");
    s
}

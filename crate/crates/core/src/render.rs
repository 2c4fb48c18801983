//! SVG drawings of a fundamental domain.
//!
//! The picture shows the tiling faces meeting the parallelogram spanned by
//! the rows of `M`, widened by one translation cell on every side. Faces are
//! colored by size; the basis vectors `A`, `B` and the parallelogram are
//! drawn on top.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::map::QuotientSpec;
use crate::tilings::template;

const SNAP: f64 = 1e-9;
const SCALE: f64 = 40.0;
const PAD: f64 = 20.0;
/// Faces drawn before the picture is refused.
pub const MAX_DRAWN_FACES: usize = 50_000;

pub fn face_color(size: usize) -> &'static str {
    match size {
        3 => "#f6d365",
        4 => "#8fd3c8",
        6 => "#f4a261",
        8 => "#a8c5e6",
        12 => "#e5a3b8",
        _ => "#cccccc",
    }
}

fn snap(x: f64) -> f64 {
    let r = (x / SNAP).round() * SNAP;
    if r == 0.0 { 0.0 } else { r }
}

struct Frame {
    min: Vec2<f64>,
    height: f64,
}

impl Frame {
    fn pt(&self, p: Vec2<f64>) -> (f64, f64) {
        let x = snap((p.x - self.min.x) * SCALE + PAD);
        let y = snap(self.height - ((p.y - self.min.y) * SCALE + PAD));
        (x, y)
    }

    fn fmt(&self, p: Vec2<f64>) -> String {
        let (x, y) = self.pt(p);
        format!("{x:.3},{y:.3}")
    }
}

/// Draw the fundamental parallelogram of `spec` as an SVG 1.1 document.
pub fn render_svg(spec: &QuotientSpec) -> Result<String> {
    let t = template(spec.tiling);
    let faces = t.faces().ok_or_else(|| Error::BrokenTemplate(spec.tiling.code().into()))?;
    let basis = t.basis;
    let [a, b, c, d] = spec.matrix.entries();
    let r1 = basis.lattice_point([a, b]);
    let r2 = basis.lattice_point([c, d]);
    let area = r1.cross(r2).abs();
    let margin = basis.a.norm().max(basis.b.norm());
    let (d1, d2) = (margin * r2.norm() / area, margin * r1.norm() / area);
    let in_region = |p: Vec2<f64>| {
        // Solve p = s1·r1 + s2·r2.
        let s1 = p.cross(r2) / r1.cross(r2);
        let s2 = r1.cross(p) / r1.cross(r2);
        (-d1..=1.0 + d1).contains(&s1) && (-d2..=1.0 + d2).contains(&s2)
    };

    let corners = [[0, 0], [a, b], [c, d], [a + c, b + d]];
    let lo = |k: usize| corners.iter().map(|v| v[k]).min().unwrap() - 2;
    let hi = |k: usize| corners.iter().map(|v| v[k]).max().unwrap() + 2;
    let cells = ((hi(0) - lo(0) + 1) * (hi(1) - lo(1) + 1)) as usize;
    if cells.saturating_mul(faces.len()) > MAX_DRAWN_FACES * 8 {
        return Err(Error::Invalid(format!("{} is too large to draw", spec.matrix)));
    }

    let mut polygons: Vec<(usize, Vec<Vec2<f64>>)> = Vec::new();
    for i in lo(0)..=hi(0) {
        for j in lo(1)..=hi(1) {
            for face in &faces {
                let pts: Vec<Vec2<f64>> = face
                    .corners
                    .iter()
                    .map(|&(rep, off)| basis.lattice_point([i + off[0], j + off[1]]) + t.positions[rep])
                    .collect();
                let n = pts.len() as f64;
                let centroid = pts.iter().fold(Vec2::zero(), |s, &p| s + p) * (1.0 / n);
                if in_region(centroid) {
                    polygons.push((face.size, pts));
                }
            }
        }
    }
    if polygons.len() > MAX_DRAWN_FACES {
        return Err(Error::Invalid(format!("{} is too large to draw", spec.matrix)));
    }

    let all = polygons.iter().flat_map(|(_, p)| p.iter().copied()).chain([Vec2::zero(), r1, r2, r1 + r2]);
    let (mut min, mut max) = (Vec2::new(f64::MAX, f64::MAX), Vec2::new(f64::MIN, f64::MIN));
    for p in all {
        min = Vec2::new(min.x.min(p.x), min.y.min(p.y));
        max = Vec2::new(max.x.max(p.x), max.y.max(p.y));
    }
    let width = (max.x - min.x) * SCALE + 2.0 * PAD;
    let height = (max.y - min.y) * SCALE + 2.0 * PAD;
    let frame = Frame { min, height };

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(w, "<title>{} {}</title>", spec.tiling.code(), spec.matrix);
    let _ = writeln!(
        w,
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"##
    );
    let _ = writeln!(w, r##"<g stroke="#333333" stroke-width="1" stroke-linejoin="round">"##);
    for (size, pts) in &polygons {
        let points: Vec<String> = pts.iter().map(|&p| frame.fmt(p)).collect();
        let _ = writeln!(w, r#"<polygon points="{}" fill="{}"/>"#, points.join(" "), face_color(*size));
    }
    let _ = writeln!(w, "</g>");

    let para: Vec<String> = [Vec2::zero(), r1, r1 + r2, r2].iter().map(|&p| frame.fmt(p)).collect();
    let _ = writeln!(
        w,
        r##"<polygon points="{}" fill="none" stroke="#000000" stroke-width="2.5" stroke-dasharray="8,4"/>"##,
        para.join(" ")
    );
    for (label, v, color) in [("A", basis.a, "#1d4ed8"), ("B", basis.b, "#b91c1c")] {
        let (x0, y0) = frame.pt(Vec2::zero());
        let (x1, y1) = frame.pt(v);
        let _ = writeln!(
            w,
            r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="{color}" stroke-width="2.5" marker-end="url(#arrow)"/>"#
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="14" fill="{color}">{label}</text>"#,
            x1 + 4.0,
            y1 - 4.0
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilings::TilingId;
    use crate::Sublattice;

    fn svg(id: TilingId, m: [i64; 4]) -> String {
        render_svg(&QuotientSpec::new(id, Sublattice::from(m)).unwrap()).unwrap()
    }

    #[test]
    fn draws_every_tiling() {
        for id in TilingId::ALL {
            let s = svg(id, [2, 0, 0, 2]);
            assert!(s.starts_with("<?xml"));
            assert!(s.contains(r#"version="1.1""#));
            assert!(s.trim_end().ends_with("</svg>"));
            assert!(s.matches("<polygon").count() > 2, "{id:?}");
            assert!(!s.contains("NaN"));
        }
    }

    #[test]
    fn colors_follow_face_sizes() {
        let s = svg(TilingId::E1, [1, 0, 0, 1]);
        assert!(s.contains(face_color(4)) && s.contains(face_color(8)));
        assert!(!s.contains(face_color(3)));
        let s = svg(TilingId::E7, [1, 0, 0, 1]);
        assert!(s.contains(face_color(4)) && s.contains(face_color(6)) && s.contains(face_color(12)));
    }

    #[test]
    fn output_is_deterministic() {
        assert_eq!(svg(TilingId::E3, [2, 1, -1, 3]), svg(TilingId::E3, [2, 1, -1, 3]));
    }

    #[test]
    fn larger_domain_has_more_faces() {
        let small = svg(TilingId::T44, [1, 0, 0, 1]).matches("<polygon").count();
        let large = svg(TilingId::T44, [4, 0, 0, 4]).matches("<polygon").count();
        assert!(large > small);
    }

    #[test]
    fn huge_domain_refused() {
        let spec = QuotientSpec::new(TilingId::E7, Sublattice::from([9000, 0, 0, 9000])).unwrap();
        assert!(render_svg(&spec).is_err());
    }
}

use std::fmt::Write as _;

use super::GeomTriangulation;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

/// A standalone SVG of the drawing: one `<line>` per edge, one labeled
/// circle per point. Axes are scaled independently so that flat or tall
/// point sets still fill the canvas.
pub fn render_svg(g: &GeomTriangulation) -> String {
    let pts = g.pointset().points();
    let (min_x, max_x) = range(pts.iter().map(|p| p.x));
    let (min_y, max_y) = range(pts.iter().map(|p| p.y));
    let sx = |x: i64| {
        MARGIN + (x - min_x) as f64 / (max_x - min_x).max(1) as f64 * (SIZE - 2.0 * MARGIN)
    };
    let sy = |y: i64| {
        SIZE - MARGIN - (y - min_y) as f64 / (max_y - min_y).max(1) as f64 * (SIZE - 2.0 * MARGIN)
    };

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    s.push_str("<g stroke=\"#333\" stroke-width=\"1.5\">\n");
    for &(a, b) in g.edges() {
        let (p, q) = (pts[a], pts[b]);
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            sx(p.x),
            sy(p.y),
            sx(q.x),
            sy(q.y)
        )
        .unwrap();
    }
    s.push_str("</g>\n<g font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n");
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = (sx(p.x), sy(p.y));
        writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="8" fill="white" stroke="black"/>"#
        )
        .unwrap();
        writeln!(s, r#"<text x="{x:.2}" y="{:.2}">{i}</text>"#, y + 3.5).unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn range(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::drawings::{enumerate_geometric_triangulations, SearchConfig};
    use crate::geometry::Point;
    use crate::pointsets::{gen_double_chain, PointSet};

    #[test]
    fn triangle_has_three_lines() {
        let ps = PointSet::new(
            vec![Point::new(0, 0), Point::new(4, 0), Point::new(1, 3)],
            None,
        )
        .unwrap();
        let g = GeomTriangulation::from_edges(Arc::new(ps), vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let svg = render_svg(&g);
        assert_eq!(svg.matches("<line ").count(), 3);
        assert_eq!(svg.matches("<text ").count(), 3);
        assert!(svg.starts_with("<svg ") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn one_line_per_edge_and_deterministic() {
        let ps = gen_double_chain(4, 3).unwrap();
        for g in enumerate_geometric_triangulations(&ps, &SearchConfig::default())
            .unwrap()
            .iter()
            .take(10)
        {
            let svg = render_svg(g);
            assert_eq!(svg.matches("<line ").count(), g.edges().len());
            assert_eq!(svg, render_svg(g));
        }
    }
}

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hull::convex_polygon;
use crate::regions::{Region, RegionKind};
use crate::space::ConceptualSpace;
use crate::tessellation::{clip, BoundingBox, Cell2D};

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

/// Something drawable in the plane of a 2-D space.
#[derive(Debug, Clone, PartialEq)]
pub enum SvgItem {
    /// Filled tessellation cell.
    Cell(Cell2D),
    /// Outlined region; `highlight` fills it, e.g. for a conjunction.
    Region {
        label: String,
        polygon: Vec<[f64; 2]>,
        highlight: bool,
    },
    /// Labelled marker, e.g. a prototype or an individual.
    Marker { label: String, at: [f64; 2] },
    /// Polyline through time-ordered positions; `dashed` for extrapolations.
    Path {
        label: String,
        points: Vec<[f64; 2]>,
        dashed: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub bbox: BoundingBox,
    pub items: Vec<SvgItem>,
}

impl SvgScene {
    pub fn new(bbox: BoundingBox) -> Self {
        SvgScene {
            bbox,
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, item: SvgItem) -> &mut Self {
        self.items.push(item);
        self
    }

    /// Standalone SVG document. Numbers use three decimals, so equal
    /// scenes give identical bytes.
    pub fn render(&self) -> String {
        let (x0, y0) = (self.bbox.min[0], self.bbox.min[1]);
        let (w, h) = (self.bbox.max[0] - x0, self.bbox.max[1] - y0);
        let scale = (CANVAS - 2.0 * MARGIN) / w.max(h).max(f64::MIN_POSITIVE);
        let (width, height) = (w * scale + 2.0 * MARGIN, h * scale + 2.0 * MARGIN);
        let map = |p: [f64; 2]| (MARGIN + (p[0] - x0) * scale, MARGIN + (self.bbox.max[1] - p[1]) * scale);
        let points = |poly: &[[f64; 2]]| {
            poly.iter()
                .map(|&p| {
                    let (x, y) = map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
        );
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN:.3}" y="{MARGIN:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#999999"/>"##,
            w * scale,
            h * scale
        );
        let mut cells = 0;
        for item in &self.items {
            match item {
                SvgItem::Cell(cell) => {
                    let _ = writeln!(
                        out,
                        r##"<polygon class="cell" data-label="{}" points="{}" fill="{}" stroke="#333333" stroke-width="1"/>"##,
                        escape(&cell.label),
                        points(&cell.polygon),
                        PALETTE[cells % PALETTE.len()]
                    );
                    cells += 1;
                }
                SvgItem::Region { label, polygon, highlight } => {
                    let (fill, stroke) = if *highlight {
                        (r##"#e41a1c" fill-opacity="0.45"##, "#e41a1c")
                    } else {
                        ("none", "#1f3a93")
                    };
                    let _ = writeln!(
                        out,
                        r#"<polygon class="region" data-label="{}" points="{}" fill="{fill}" stroke="{stroke}" stroke-width="2"/>"#,
                        escape(label),
                        points(polygon)
                    );
                    if let Some(&first) = polygon.first() {
                        let (x, y) = map(first);
                        let _ = writeln!(
                            out,
                            r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="{stroke}">{}</text>"#,
                            x + 4.0,
                            y - 4.0,
                            escape(label)
                        );
                    }
                }
                SvgItem::Marker { label, at } => {
                    let (x, y) = map(*at);
                    let _ = writeln!(
                        out,
                        r##"<circle class="marker" data-label="{}" cx="{x:.3}" cy="{y:.3}" r="4" fill="#000000"/>"##,
                        escape(label)
                    );
                    let _ = writeln!(
                        out,
                        r#"<text x="{:.3}" y="{:.3}" font-size="12">{}</text>"#,
                        x + 6.0,
                        y - 6.0,
                        escape(label)
                    );
                }
                SvgItem::Path { label, points: pts, dashed } => {
                    let dash = if *dashed { r#" stroke-dasharray="6 4""# } else { "" };
                    let _ = writeln!(
                        out,
                        r##"<polyline class="path" data-label="{}" points="{}" fill="none" stroke="#377eb8" stroke-width="2"{dash}/>"##,
                        escape(label),
                        points(pts)
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Writes the rendered scene to `path`.
pub fn emit_svg(scene: &SvgScene, path: &Path) -> Result<()> {
    std::fs::write(path, scene.render())?;
    Ok(())
}

/// Counterclockwise outline of a region of a 2-D linear space, clipped to
/// `bbox`. Balls are approximated by a 72-gon.
pub fn region_outline(space: &ConceptualSpace, region: &Region, bbox: BoundingBox) -> Result<Vec<[f64; 2]>> {
    if space.dims() != 2 || space.has_circular() {
        return Err(Error::UnsupportedMetric(
            "outlines need exactly two linear dimensions".into(),
        ));
    }
    let frame = bbox.polygon();
    Ok(match region.kind() {
        RegionKind::Box(iv) => {
            let mut poly = frame;
            for (i, &(lo, hi)) in iv.iter().enumerate() {
                let mut up = [0.0; 2];
                up[i] = 1.0;
                poly = clip(&poly, up, hi);
                up[i] = -1.0;
                poly = clip(&poly, up, -lo);
            }
            poly
        }
        RegionKind::Halfspaces(hs) => hs
            .iter()
            .fold(frame, |poly, h| clip(&poly, [h.normal[0], h.normal[1]], h.offset)),
        RegionKind::Hull(g) => {
            let pts: Vec<[f64; 2]> = g.iter().map(|p| [p.coords()[0], p.coords()[1]]).collect();
            clip_to_polygon(&frame, &convex_polygon(&pts))
        }
        RegionKind::Ball { center, radius } => {
            let c = center.coords();
            let ring: Vec<[f64; 2]> = (0..72)
                .map(|k| {
                    let theta = k as f64 * std::f64::consts::TAU / 72.0;
                    let (dx, dy) = (theta.cos(), theta.sin());
                    let unit = space.coord_distance(c, &[c[0] + dx, c[1] + dy]);
                    let s = radius / unit;
                    [c[0] + s * dx, c[1] + s * dy]
                })
                .collect();
            clip_to_polygon(&frame, &ring)
        }
        RegionKind::Intersection(parts) => {
            let mut poly = frame;
            for part in parts {
                poly = clip_to_polygon(&poly, &region_outline(space, part, bbox)?);
            }
            poly
        }
    })
}

/// Clips `poly` to the inside of the counterclockwise convex polygon `by`.
fn clip_to_polygon(poly: &[[f64; 2]], by: &[[f64; 2]]) -> Vec<[f64; 2]> {
    if by.len() < 3 {
        return by.to_vec();
    }
    let mut out = poly.to_vec();
    for i in 0..by.len() {
        let (a, b) = (by[i], by[(i + 1) % by.len()]);
        let normal = [b[1] - a[1], -(b[0] - a[0])];
        out = clip(&out, normal, normal[0] * a[0] + normal[1] * a[1]);
        if out.is_empty() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Dimension, Domain};
    use crate::tessellation::Tessellation;

    fn plane() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "p",
            vec![Dimension::linear("x", 0.0, 10.0), Dimension::linear("y", 0.0, 10.0)],
        )])
        .unwrap()
    }

    fn area(poly: &[[f64; 2]]) -> f64 {
        Cell2D { label: String::new(), polygon: poly.to_vec() }.area()
    }

    #[test]
    fn two_cell_picture() {
        let s = plane();
        let tess = Tessellation::new(
            &s,
            vec![("a".into(), s.point([2.0, 5.0]).unwrap()), ("b".into(), s.point([8.0, 5.0]).unwrap())],
        )
        .unwrap();
        let bbox = BoundingBox::new(0.0, 0.0, 10.0, 10.0);
        let mut scene = SvgScene::new(bbox);
        for cell in tess.tessellate_2d(&s, bbox).unwrap() {
            scene.push(SvgItem::Cell(cell));
        }
        for (l, p) in tess.prototypes() {
            scene.push(SvgItem::Marker { label: l.clone(), at: [p.coords()[0], p.coords()[1]] });
        }
        let svg = scene.render();
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert_eq!(svg.matches("<polygon class=\"cell\"").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg, scene.render());
    }

    #[test]
    fn outlines() {
        let s = plane();
        let bbox = BoundingBox::new(0.0, 0.0, 10.0, 10.0);
        let b = Region::boxed(&s, vec![(1.0, 3.0), (2.0, 6.0)]).unwrap();
        assert!((area(&region_outline(&s, &b, bbox).unwrap()) - 8.0).abs() < 1e-12);
        let ball = Region::ball(&s, s.point([5.0, 5.0]).unwrap(), 2.0).unwrap();
        let a = area(&region_outline(&s, &ball, bbox).unwrap());
        assert!((a - std::f64::consts::PI * 4.0).abs() < 0.1, "{a}");
        let hull = Region::hull(
            &s,
            vec![s.point([0.0, 0.0]).unwrap(), s.point([4.0, 0.0]).unwrap(), s.point([0.0, 4.0]).unwrap()],
        )
        .unwrap();
        assert!((area(&region_outline(&s, &hull, bbox).unwrap()) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn labels_are_escaped() {
        let mut scene = SvgScene::new(BoundingBox::new(0.0, 0.0, 1.0, 1.0));
        scene.push(SvgItem::Marker { label: "a&b<c>".into(), at: [0.5, 0.5] });
        assert!(scene.render().contains("a&amp;b&lt;c&gt;"));
    }
}

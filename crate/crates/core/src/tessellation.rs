//! Nearest-prototype tessellations.
//!
//! A set of prototype points splits the space into Voronoi cells, one per
//! prototype. Any dimension count works for categorization; explicit
//! polygons are produced for 2-D Euclidean spaces only.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::regions::Exemplar;
use crate::space::{ConceptualSpace, Point, SpaceId};

#[derive(Debug, Clone, PartialEq)]
pub struct Tessellation {
    prototypes: Vec<(String, Point)>,
    space: SpaceId,
}

impl Tessellation {
    pub fn new(space: &ConceptualSpace, prototypes: Vec<(String, Point)>) -> Result<Self> {
        if prototypes.is_empty() {
            return Err(Error::InvalidArgument("tessellation needs a prototype".into()));
        }
        let mut labels = HashSet::new();
        for (i, (label, p)) in prototypes.iter().enumerate() {
            space.check(p)?;
            if !labels.insert(label.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate prototype `{label}`")));
            }
            for (other, q) in &prototypes[..i] {
                if space.coord_distance(p.coords(), q.coords()) == 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "prototypes `{other}` and `{label}` coincide"
                    )));
                }
            }
        }
        Ok(Tessellation {
            prototypes,
            space: space.id(),
        })
    }

    pub fn prototypes(&self) -> &[(String, Point)] {
        &self.prototypes
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.prototypes.iter().map(|(l, _)| l.as_str())
    }

    /// Index of the nearest prototype; ties go to the lowest index.
    pub fn nearest(&self, space: &ConceptualSpace, p: &Point) -> Result<usize> {
        space.check(p)?;
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, (_, q)) in self.prototypes.iter().enumerate() {
            let d = space.coord_distance(p.coords(), q.coords());
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        Ok(best)
    }

    /// Label of the nearest prototype.
    pub fn categorize(&self, space: &ConceptualSpace, p: &Point) -> Result<&str> {
        Ok(&self.prototypes[self.nearest(space, p)?].0)
    }

    /// Voronoi cells clipped to `bbox`, in prototype order.
    ///
    /// Requires two linear dimensions under a (weighted) Euclidean metric,
    /// where every bisector is a straight line.
    pub fn tessellate_2d(&self, space: &ConceptualSpace, bbox: BoundingBox) -> Result<Vec<Cell2D>> {
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        let weights = planar_weights(space)?;
        if !(bbox.min[0] < bbox.max[0] && bbox.min[1] < bbox.max[1]) {
            return Err(Error::InvalidArgument("bounding box is empty".into()));
        }
        let frame = bbox.polygon();
        let mut cells = Vec::with_capacity(self.prototypes.len());
        for (i, (label, p)) in self.prototypes.iter().enumerate() {
            let mut poly = frame.clone();
            for (j, (_, q)) in self.prototypes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (p, q) = (p.coords(), q.coords());
                if p == q {
                    return Err(Error::InvalidArgument("coincident prototypes".into()));
                }
                // weighted squared distance to p <= to q
                let a = [2.0 * weights[0] * (q[0] - p[0]), 2.0 * weights[1] * (q[1] - p[1])];
                let b = weights[0] * (q[0] * q[0] - p[0] * p[0]) + weights[1] * (q[1] * q[1] - p[1] * p[1]);
                poly = clip(&poly, a, b);
                if poly.is_empty() {
                    break;
                }
            }
            cells.push(Cell2D {
                label: label.clone(),
                polygon: poly,
            });
        }
        Ok(cells)
    }
}

/// Coefficients `(a, b)` with `d^2 = a dx^2 + b dy^2`, when the space is
/// a Euclidean plane up to axis scaling.
fn planar_weights(space: &ConceptualSpace) -> Result<[f64; 2]> {
    if space.dims() != 2 || space.has_circular() {
        return Err(Error::UnsupportedMetric(
            "explicit cells need exactly two linear dimensions".into(),
        ));
    }
    let domains = space.domains();
    if domains.len() == 1 && domains[0].exponent == 2.0 {
        let d = &domains[0].dimensions;
        return Ok([d[0].weight, d[1].weight]);
    }
    if domains.len() == 2 && space.inter_exponent() == 2.0 {
        let w = |k: usize| {
            let dom = &domains[k];
            dom.weight * dom.dimensions[0].weight.powf(2.0 / dom.exponent)
        };
        return Ok([w(0), w(1)]);
    }
    Err(Error::UnsupportedMetric(
        "explicit cells need a Euclidean plane".into(),
    ))
}

/// Sutherland-Hodgman clip of a convex polygon to `a · x <= b`.
pub(crate) fn clip(poly: &[[f64; 2]], a: [f64; 2], b: f64) -> Vec<[f64; 2]> {
    let side = |p: [f64; 2]| a[0] * p[0] + a[1] * p[1] - b;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (i, &cur) in poly.iter().enumerate() {
        let next = poly[(i + 1) % poly.len()];
        let (sc, sn) = (side(cur), side(next));
        if sc <= 0.0 {
            out.push(cur);
        }
        if (sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0) {
            let t = sc / (sc - sn);
            out.push([cur[0] + t * (next[0] - cur[0]), cur[1] + t * (next[1] - cur[1])]);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl BoundingBox {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        BoundingBox {
            min: [x0, y0],
            max: [x1, y1],
        }
    }

    pub fn area(&self) -> f64 {
        (self.max[0] - self.min[0]) * (self.max[1] - self.min[1])
    }

    pub(crate) fn polygon(&self) -> Vec<[f64; 2]> {
        vec![
            [self.min[0], self.min[1]],
            [self.max[0], self.min[1]],
            [self.max[0], self.max[1]],
            [self.min[0], self.max[1]],
        ]
    }
}

/// One Voronoi cell as a closed counterclockwise polygon (first vertex
/// not repeated). Empty when the cell misses the bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell2D {
    pub label: String,
    pub polygon: Vec<[f64; 2]>,
}

impl Cell2D {
    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let n = self.polygon.len();
        if n < 3 {
            return 0.0;
        }
        let twice: f64 = (0..n)
            .map(|i| {
                let (a, b) = (self.polygon[i], self.polygon[(i + 1) % n]);
                a[0] * b[1] - b[0] * a[1]
            })
            .sum();
        twice / 2.0
    }

    /// Every turn is a left turn (or straight, within `tol`).
    pub fn is_convex(&self, tol: f64) -> bool {
        let n = self.polygon.len();
        (0..n).all(|i| {
            let (a, b, c) = (self.polygon[i], self.polygon[(i + 1) % n], self.polygon[(i + 2) % n]);
            (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) >= -tol
        })
    }

    /// Point-in-convex-polygon with boundary tolerance `tol`.
    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        let n = self.polygon.len();
        if n < 3 {
            return false;
        }
        (0..n).all(|i| {
            let (a, b) = (self.polygon[i], self.polygon[(i + 1) % n]);
            let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
            if len == 0.0 {
                return true;
            }
            ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])) / len >= -tol
        })
    }
}

/// k-nearest-exemplar categorization: majority label among the `k`
/// closest exemplars, ties resolved in favour of the label whose nearest
/// exemplar is closest.
pub fn categorize_by_exemplars<'a>(
    space: &ConceptualSpace,
    exemplars: &'a [Exemplar],
    p: &Point,
    k: usize,
) -> Result<&'a str> {
    if exemplars.is_empty() || k == 0 {
        return Err(Error::InvalidArgument("need at least one exemplar and k >= 1".into()));
    }
    let mut ranked = exemplars
        .iter()
        .map(|e| Ok((space.distance(&e.point, p)?, e)))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    // label -> (votes, rank of first occurrence)
    let mut votes: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (rank, (_, e)) in ranked.iter().take(k).enumerate() {
        votes.entry(e.label.as_str()).or_insert((0, rank)).0 += 1;
    }
    let (label, _) = votes
        .into_iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
        .expect("k >= 1 and exemplars nonempty");
    Ok(label)
}

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{polytope_bounds, spread_samples, Region, RegionKind, SPREAD_SAMPLES};
use crate::error::{Error, Result};
use crate::space::{ConceptualSpace, DimensionKind, Point};

/// Smallest typicality scale; keeps point-like concepts well defined.
pub const MIN_SIGMA: f64 = 1e-6;

/// A stored instance of a concept.
#[derive(Debug, Clone, PartialEq)]
pub struct Exemplar {
    pub label: String,
    pub point: Point,
}

impl Exemplar {
    pub fn new(label: impl Into<String>, point: Point) -> Self {
        Exemplar {
            label: label.into(),
            point,
        }
    }
}

/// A named convex region with its prototype and typicality scale.
///
/// Typicality falls off as a Gaussian of the distance to the prototype:
/// `exp(-d^2 / (2 sigma^2))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Concept {
    label: String,
    region: Region,
    prototype: Point,
    sigma: f64,
}

impl Concept {
    /// Concept whose prototype is the region centroid and whose scale is
    /// the RMS distance of sampled members to that centroid.
    pub fn new(
        space: &ConceptualSpace,
        label: impl Into<String>,
        region: Region,
        seed: u64,
    ) -> Result<Self> {
        let prototype = region.centroid(space, seed)?;
        let sigma = rms_spread(space, &region, &prototype, seed)?;
        Ok(Concept {
            label: label.into(),
            region,
            prototype,
            sigma,
        })
    }

    /// Centroid prototype with an explicit typicality scale.
    pub fn with_sigma(
        space: &ConceptualSpace,
        label: impl Into<String>,
        region: Region,
        sigma: f64,
        seed: u64,
    ) -> Result<Self> {
        let prototype = region.centroid(space, seed)?;
        Self::from_parts(space, label, region, prototype, sigma)
    }

    /// Given prototype; scale is the RMS distance of members to it.
    pub fn with_prototype(
        space: &ConceptualSpace,
        label: impl Into<String>,
        region: Region,
        prototype: Point,
        seed: u64,
    ) -> Result<Self> {
        space.check(&prototype)?;
        let sigma = rms_spread(space, &region, &prototype, seed)?;
        Self::from_parts(space, label, region, prototype, sigma)
    }

    /// Checks that the prototype lies in the region and `sigma > 0`.
    pub fn from_parts(
        space: &ConceptualSpace,
        label: impl Into<String>,
        region: Region,
        prototype: Point,
        sigma: f64,
    ) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "typicality scale must be positive, got {sigma}"
            )));
        }
        if !region.contains(space, &prototype)? {
            return Err(Error::InvalidRegion(
                "prototype lies outside the concept region".into(),
            ));
        }
        Ok(Concept {
            label: label.into(),
            region,
            prototype,
            sigma,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn prototype(&self) -> &Point {
        &self.prototype
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn typicality(&self, space: &ConceptualSpace, p: &Point) -> Result<f64> {
        let d = space.distance(p, &self.prototype)?;
        Ok((-(d * d) / (2.0 * self.sigma * self.sigma)).exp())
    }

    pub fn contains(&self, space: &ConceptualSpace, p: &Point) -> Result<bool> {
        self.region.contains(space, p)
    }
}

fn rms_spread(space: &ConceptualSpace, region: &Region, center: &Point, seed: u64) -> Result<f64> {
    // decorrelate from the centroid draws
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed_5eed_5eed);
    let samples = spread_samples(space, region, SPREAD_SAMPLES, &mut rng)?;
    let sum: f64 = samples
        .iter()
        .map(|x| space.coord_distance(x, center.coords()).powi(2))
        .sum();
    Ok((sum / samples.len() as f64).sqrt().max(MIN_SIGMA))
}

/// Convex hull of exemplar points. Coincident or collinear inputs give a
/// degenerate but valid region.
pub fn region_from_exemplars(space: &ConceptualSpace, points: &[Point]) -> Result<Region> {
    if points.is_empty() {
        return Err(Error::InvalidRegion("no exemplars".into()));
    }
    Region::hull(space, points.to_vec())
}

/// Conjunction of two concepts: the intersection of their regions, with a
/// fresh centroid prototype and RMS typicality scale.
///
/// Box pairs intersect interval by interval. Regions with an inequality
/// form intersect as one halfspace system. Anything else becomes a
/// membership-predicate intersection whose emptiness is judged by sampling.
pub fn combine(space: &ConceptualSpace, a: &Concept, b: &Concept, seed: u64) -> Result<Concept> {
    if a.region.space_id() != space.id() || b.region.space_id() != space.id() {
        return Err(Error::SpaceMismatch);
    }
    let empty = || Error::EmptyConjunction {
        left: a.label.clone(),
        right: b.label.clone(),
    };
    let region = match (a.region.kind(), b.region.kind()) {
        (RegionKind::Box(ia), RegionKind::Box(ib)) => {
            let mut out = Vec::with_capacity(ia.len());
            for ((dim, &x), &y) in space.dimensions().zip(ia).zip(ib) {
                let iv = match dim.kind {
                    DimensionKind::Linear { .. } => {
                        let (lo, hi) = (x.0.max(y.0), x.1.min(y.1));
                        (lo <= hi).then_some((lo, hi))
                    }
                    DimensionKind::Circular { period } => intersect_arcs(x, y, period)
                        .map(|(lo, hi)| (dim.wrap(lo), dim.wrap(hi))),
                };
                out.push(iv.ok_or_else(empty)?);
            }
            Region::boxed(space, out)?
        }
        _ => match (a.region.to_halfspaces(), b.region.to_halfspaces()) {
            (Some(mut ha), Some(hb)) => {
                ha.extend(hb);
                if polytope_bounds(space, &ha).is_none() {
                    return Err(empty());
                }
                Region::halfspaces(space, ha)?
            }
            _ => {
                let region =
                    Region::intersection(space, vec![a.region.clone(), b.region.clone()])?;
                if region.bounds().iter().any(|(lo, hi)| lo > hi) {
                    return Err(empty());
                }
                region
            }
        },
    };
    let label = format!("{}&{}", a.label, b.label);
    match Concept::new(space, label, region, seed) {
        Err(Error::SamplingFailed { rate: 0.0 }) => Err(empty()),
        other => other,
    }
}

/// Intersection of two arcs, each given as `lo` running upward to `hi`.
fn intersect_arcs(a: (f64, f64), b: (f64, f64), period: f64) -> Option<(f64, f64)> {
    let len_a = (a.1 - a.0).rem_euclid(period);
    let len_b = (b.1 - b.0).rem_euclid(period);
    // b expressed in a frame where a = [0, len_a]
    let start = (b.0 - a.0).rem_euclid(period);
    let mut best: Option<(f64, f64)> = None;
    for shift in [start, start - period] {
        let lo = shift.max(0.0);
        let hi = (shift + len_b).min(len_a);
        if lo <= hi && best.is_none_or(|(blo, bhi)| hi - lo > bhi - blo) {
            best = Some((lo, hi));
        }
    }
    best.map(|(lo, hi)| (a.0 + lo, a.0 + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Dimension, Domain};

    fn plane() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "plane",
            vec![Dimension::linear("x", -10.0, 10.0), Dimension::linear("y", -10.0, 10.0)],
        )])
        .unwrap()
    }

    fn boxed(s: &ConceptualSpace, label: &str, x: (f64, f64), y: (f64, f64)) -> Concept {
        Concept::new(s, label, Region::boxed(s, vec![x, y]).unwrap(), 7).unwrap()
    }

    #[test]
    fn typicality_profile() {
        let s = plane();
        let c = Concept::with_sigma(&s, "c", Region::boxed(&s, vec![(-2.0, 2.0), (-2.0, 2.0)]).unwrap(), 1.0, 0)
            .unwrap();
        let proto = c.prototype().clone();
        assert_eq!(c.typicality(&s, &proto).unwrap(), 1.0);
        let at_sigma = s.point([1.0, 0.0]).unwrap();
        assert!((c.typicality(&s, &at_sigma).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn box_sigma_matches_uniform_rms() {
        let s = plane();
        let c = boxed(&s, "c", (0.0, 6.0), (0.0, 6.0));
        // E[dx^2 + dy^2] = 2 * 36 / 12
        assert!((c.sigma() - 6f64.sqrt()).abs() < 0.05, "{}", c.sigma());
    }

    #[test]
    fn combine_boxes() {
        let s = plane();
        let a = boxed(&s, "a", (0.0, 2.0), (0.0, 2.0));
        let b = boxed(&s, "b", (1.0, 3.0), (1.0, 3.0));
        let ab = combine(&s, &a, &b, 3).unwrap();
        assert_eq!(ab.region().kind(), &RegionKind::Box(vec![(1.0, 2.0), (1.0, 2.0)]));
        assert_eq!(ab.prototype().coords(), &[1.5, 1.5]);
        assert_eq!(ab.label(), "a&b");
    }

    #[test]
    fn disjoint_boxes_are_empty_conjunctions() {
        let s = plane();
        let a = boxed(&s, "a", (0.0, 1.0), (0.0, 1.0));
        let b = boxed(&s, "b", (2.0, 3.0), (2.0, 3.0));
        assert!(matches!(combine(&s, &a, &b, 0), Err(Error::EmptyConjunction { .. })));
    }

    #[test]
    fn disjoint_hull_and_ball() {
        let s = plane();
        let hull = Region::hull(
            &s,
            vec![s.point([0.0, 0.0]).unwrap(), s.point([1.0, 0.0]).unwrap(), s.point([0.0, 1.0]).unwrap()],
        )
        .unwrap();
        let a = Concept::new(&s, "tri", hull, 1).unwrap();
        let ball = Region::ball(&s, s.point([5.0, 5.0]).unwrap(), 1.0).unwrap();
        let b = Concept::new(&s, "ball", ball, 1).unwrap();
        assert!(matches!(combine(&s, &a, &b, 0), Err(Error::EmptyConjunction { .. })));
        let far = Region::hull(
            &s,
            vec![s.point([5.0, 5.0]).unwrap(), s.point([6.0, 5.0]).unwrap(), s.point([5.0, 6.0]).unwrap()],
        )
        .unwrap();
        let c = Concept::new(&s, "far", far, 1).unwrap();
        assert!(matches!(combine(&s, &a, &c, 0), Err(Error::EmptyConjunction { .. })));
    }

    #[test]
    fn hull_and_ball_fall_back_to_predicate() {
        let s = plane();
        let square = Region::hull(
            &s,
            vec![
                s.point([0.0, 0.0]).unwrap(),
                s.point([2.0, 0.0]).unwrap(),
                s.point([2.0, 2.0]).unwrap(),
                s.point([0.0, 2.0]).unwrap(),
            ],
        )
        .unwrap();
        let a = Concept::new(&s, "sq", square, 1).unwrap();
        let b = Concept::new(&s, "ball", Region::ball(&s, s.point([2.0, 1.0]).unwrap(), 1.0).unwrap(), 1).unwrap();
        let ab = combine(&s, &a, &b, 5).unwrap();
        assert!(matches!(ab.region().kind(), RegionKind::Intersection(_)));
        // half disc centroid: x = 2 - 4/(3 pi)
        let expected = 2.0 - 4.0 / (3.0 * std::f64::consts::PI);
        assert!((ab.prototype().coords()[0] - expected).abs() < 0.02);
        assert!((ab.prototype().coords()[1] - 1.0).abs() < 0.02);
    }

    #[test]
    fn prototype_must_be_inside() {
        let s = plane();
        let r = Region::boxed(&s, vec![(0.0, 1.0), (0.0, 1.0)]).unwrap();
        let outside = s.point([5.0, 5.0]).unwrap();
        assert!(Concept::from_parts(&s, "c", r.clone(), outside, 1.0).is_err());
        let inside = s.point([0.5, 0.5]).unwrap();
        assert!(Concept::from_parts(&s, "c", r, inside, 0.0).is_err());
    }

    #[test]
    fn exemplar_regions() {
        let s = plane();
        assert!(region_from_exemplars(&s, &[]).is_err());
        let one = region_from_exemplars(&s, &[s.point([0.0, 0.0]).unwrap()]).unwrap();
        assert!(one.contains(&s, &s.point([0.0, 0.0]).unwrap()).unwrap());
        let c = Concept::new(&s, "pt", one, 0).unwrap();
        assert_eq!(c.sigma(), MIN_SIGMA);
    }

    #[test]
    fn arc_intersection() {
        assert_eq!(intersect_arcs((350.0, 30.0), (10.0, 60.0), 360.0), Some((370.0, 390.0)));
        assert_eq!(intersect_arcs((0.0, 10.0), (20.0, 30.0), 360.0), None);
        assert_eq!(intersect_arcs((10.0, 50.0), (340.0, 20.0), 360.0), Some((10.0, 20.0)));
    }

    #[test]
    fn circular_box_conjunction() {
        let s = ConceptualSpace::new(vec![Domain::new(
            "color",
            vec![Dimension::circular("hue", 360.0)],
        )])
        .unwrap();
        let a = Concept::new(&s, "a", Region::boxed(&s, vec![(350.0, 30.0)]).unwrap(), 0).unwrap();
        let b = Concept::new(&s, "b", Region::boxed(&s, vec![(10.0, 60.0)]).unwrap(), 0).unwrap();
        let ab = combine(&s, &a, &b, 0).unwrap();
        assert_eq!(ab.region().kind(), &RegionKind::Box(vec![(10.0, 30.0)]));
    }
}

//! Convex regions of a conceptual space.
//!
//! Four encodings are available: axis-aligned boxes, metric balls,
//! halfspace polytopes and convex hulls of generator points. Halfspaces
//! are the canonical form for exact intersection; boxes and low
//! dimensional hulls convert to it. Regions that cannot be converted
//! (balls, high-dimensional hulls) are intersected as membership
//! predicates.
//!
//! Halfspace and hull geometry is computed in the coordinate chart. A
//! circular dimension is unrolled to `[0, period)`; regions may not extend
//! over more than half a period along it, so the chart and the shorter-arc
//! geometry agree. Boxes are the exception: a box interval `lo..hi` with
//! `lo > hi` on a circular dimension denotes the arc through zero.

mod concept;
mod convexity;

pub use concept::{combine, region_from_exemplars, Concept, Exemplar};
pub use convexity::{between, check_criterion_p, ConvexityReport};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hull::hull_halfspaces;
use crate::lp;
use crate::space::{ConceptualSpace, DimensionKind, Point, SpaceId};

/// Membership tolerance shared by every region kind.
pub const CONTAINS_TOL: f64 = 1e-9;

/// Number of bounding-box draws used for Monte Carlo centroids.
pub const CENTROID_DRAWS: usize = 100_000;

/// Minimum acceptance rate before a region is declared too thin to sample.
pub const MIN_ACCEPTANCE: f64 = 1e-4;

/// Member samples used to estimate the RMS spread of a region.
pub(crate) const SPREAD_SAMPLES: usize = 20_000;

/// The inequality `normal · x <= offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Self {
        Halfspace { normal, offset }
    }

    /// Rescales to a unit normal so residuals are Euclidean distances.
    pub fn normalized(self) -> Self {
        let norm = self.normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return self;
        }
        Halfspace {
            normal: self.normal.iter().map(|c| c / norm).collect(),
            offset: self.offset / norm,
        }
    }

    /// Signed residual `normal · x - offset`; nonpositive inside.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - self.offset
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegionKind {
    /// One `(lo, hi)` interval per dimension.
    Box(Vec<(f64, f64)>),
    Ball { center: Point, radius: f64 },
    Halfspaces(Vec<Halfspace>),
    Hull(Vec<Point>),
    /// Conjunction of convex regions kept as a membership predicate.
    Intersection(Vec<Region>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    kind: RegionKind,
    space: SpaceId,
    /// Chart bounding box.
    bounds: Vec<(f64, f64)>,
    /// Facets of a hull, when it is full-dimensional in at most 3-D.
    facets: Option<Vec<Halfspace>>,
}

/// Anything that answers point membership and can be sampled inside a
/// bounding box. Regions implement it; tests use it for non-convex fixtures.
pub trait Membership {
    fn contains_coords(&self, space: &ConceptualSpace, x: &[f64]) -> bool;
    fn sampling_bounds(&self) -> &[(f64, f64)];
}

impl Membership for Region {
    fn contains_coords(&self, space: &ConceptualSpace, x: &[f64]) -> bool {
        Region::contains_coords(self, space, x)
    }

    fn sampling_bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }
}

fn arc_length(lo: f64, hi: f64, period: f64) -> f64 {
    (hi - lo).rem_euclid(period)
}

fn mismatch<T>(space: &ConceptualSpace, n: usize) -> Result<T> {
    Err(Error::InvalidRegion(format!(
        "expected {} coordinates, got {n}",
        space.dims()
    )))
}

fn check_half_period(space: &ConceptualSpace, bounds: &[(f64, f64)]) -> Result<()> {
    for (dim, (lo, hi)) in space.dimensions().zip(bounds) {
        if let DimensionKind::Circular { period } = dim.kind {
            if hi - lo > period / 2.0 + CONTAINS_TOL {
                return Err(Error::InvalidRegion(format!(
                    "region spans {} along circular dimension `{}`, more than half its period",
                    hi - lo,
                    dim.name
                )));
            }
        }
    }
    Ok(())
}

impl Region {
    /// Axis-aligned box. Circular intervals are arcs from `lo` upward to
    /// `hi` (wrapping through zero when `lo > hi`), at most half a period long.
    pub fn boxed(space: &ConceptualSpace, intervals: Vec<(f64, f64)>) -> Result<Region> {
        if intervals.len() != space.dims() {
            return mismatch(space, intervals.len());
        }
        let mut normalized = Vec::with_capacity(intervals.len());
        let mut bounds = Vec::with_capacity(intervals.len());
        for (dim, &(lo, hi)) in space.dimensions().zip(&intervals) {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::InvalidRegion(format!(
                    "non-finite interval for `{}`",
                    dim.name
                )));
            }
            match dim.kind {
                DimensionKind::Linear { min, max } => {
                    if lo > hi || lo < min || hi > max {
                        return Err(Error::InvalidRegion(format!(
                            "interval {lo}..{hi} for `{}` is empty or outside [{min}, {max}]",
                            dim.name
                        )));
                    }
                    normalized.push((lo, hi));
                    bounds.push((lo, hi));
                }
                DimensionKind::Circular { period } => {
                    let (lo, hi) = (dim.wrap(lo), dim.wrap(hi));
                    if arc_length(lo, hi, period) > period / 2.0 {
                        return Err(Error::InvalidRegion(format!(
                            "arc {lo}..{hi} on `{}` is longer than half the period",
                            dim.name
                        )));
                    }
                    normalized.push((lo, hi));
                    bounds.push(if lo <= hi { (lo, hi) } else { (0.0, period) });
                }
            }
        }
        Ok(Region {
            kind: RegionKind::Box(normalized),
            space: space.id(),
            bounds,
            facets: None,
        })
    }

    /// Closed metric ball `{x : d(x, center) <= radius}`.
    pub fn ball(space: &ConceptualSpace, center: Point, radius: f64) -> Result<Region> {
        space.check(&center)?;
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRegion(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        let bounds = space
            .dimensions()
            .enumerate()
            .map(|(i, dim)| {
                let c = center.coords()[i];
                let reach = space.axis_reach(i, radius);
                match dim.kind {
                    DimensionKind::Linear { min, max } => ((c - reach).max(min), (c + reach).min(max)),
                    DimensionKind::Circular { period } => {
                        if reach >= period / 2.0 || c - reach < 0.0 || c + reach > period {
                            (0.0, period)
                        } else {
                            (c - reach, c + reach)
                        }
                    }
                }
            })
            .collect();
        Ok(Region {
            kind: RegionKind::Ball { center, radius },
            space: space.id(),
            bounds,
            facets: None,
        })
    }

    /// Polytope `{x : n_i · x <= b_i}` intersected with the space's chart.
    pub fn halfspaces(space: &ConceptualSpace, constraints: Vec<Halfspace>) -> Result<Region> {
        for h in &constraints {
            if h.normal.len() != space.dims() {
                return mismatch(space, h.normal.len());
            }
            if !(h.offset.is_finite() && h.normal.iter().all(|c| c.is_finite())) {
                return Err(Error::InvalidRegion("non-finite halfspace".into()));
            }
        }
        let constraints: Vec<Halfspace> = constraints.into_iter().map(Halfspace::normalized).collect();
        let bounds = polytope_bounds(space, &constraints).ok_or_else(|| {
            Error::InvalidRegion("halfspace system has no feasible point".into())
        })?;
        check_half_period(space, &bounds)?;
        Ok(Region {
            kind: RegionKind::Halfspaces(constraints),
            space: space.id(),
            bounds,
            facets: None,
        })
    }

    /// Convex hull of the generator points.
    pub fn hull(space: &ConceptualSpace, generators: Vec<Point>) -> Result<Region> {
        if generators.is_empty() {
            return Err(Error::InvalidRegion("hull needs at least one point".into()));
        }
        for g in &generators {
            space.check(g)?;
        }
        let bounds: Vec<(f64, f64)> = (0..space.dims())
            .map(|i| {
                generators.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), g| {
                    (lo.min(g.coords()[i]), hi.max(g.coords()[i]))
                })
            })
            .collect();
        check_half_period(space, &bounds)?;
        let coords: Vec<Vec<f64>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        let facets = hull_halfspaces(&coords);
        Ok(Region {
            kind: RegionKind::Hull(generators),
            space: space.id(),
            bounds,
            facets,
        })
    }

    /// Intersection kept as a membership predicate.
    pub(crate) fn intersection(space: &ConceptualSpace, parts: Vec<Region>) -> Result<Region> {
        let mut bounds = space.chart_bounds();
        for part in &parts {
            if part.space != space.id() {
                return Err(Error::SpaceMismatch);
            }
            for (b, p) in bounds.iter_mut().zip(&part.bounds) {
                b.0 = b.0.max(p.0);
                b.1 = b.1.min(p.1);
            }
        }
        Ok(Region {
            kind: RegionKind::Intersection(parts),
            space: space.id(),
            bounds,
            facets: None,
        })
    }

    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    pub fn space_id(&self) -> SpaceId {
        self.space
    }

    /// Chart bounding box of the region.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// True when membership and centroid are closed-form (box, ball).
    pub fn is_analytic(&self) -> bool {
        matches!(self.kind, RegionKind::Box(_) | RegionKind::Ball { .. })
    }

    pub fn contains(&self, space: &ConceptualSpace, p: &Point) -> Result<bool> {
        space.check(p)?;
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.contains_coords(space, p.coords()))
    }

    pub(crate) fn contains_coords(&self, space: &ConceptualSpace, x: &[f64]) -> bool {
        match &self.kind {
            RegionKind::Box(intervals) => {
                space
                    .dimensions()
                    .zip(intervals)
                    .zip(x)
                    .all(|((dim, &(lo, hi)), &v)| match dim.kind {
                        DimensionKind::Linear { .. } => {
                            v >= lo - CONTAINS_TOL && v <= hi + CONTAINS_TOL
                        }
                        DimensionKind::Circular { period } => {
                            let len = arc_length(lo, hi, period);
                            let off = (v - lo).rem_euclid(period);
                            off <= len + CONTAINS_TOL || off >= period - CONTAINS_TOL
                        }
                    })
            }
            RegionKind::Ball { center, radius } => {
                space.coord_distance(center.coords(), x) <= radius + CONTAINS_TOL
            }
            RegionKind::Halfspaces(hs) => hs.iter().all(|h| h.eval(x) <= CONTAINS_TOL),
            RegionKind::Hull(generators) => match &self.facets {
                Some(facets) => facets.iter().all(|h| h.eval(x) <= CONTAINS_TOL),
                None => {
                    if !in_bounds(&self.bounds, x) {
                        return false;
                    }
                    let rows: Vec<Vec<f64>> =
                        generators.iter().map(|g| g.coords().to_vec()).collect();
                    lp::in_convex_hull(&rows, x, CONTAINS_TOL)
                }
            },
            RegionKind::Intersection(parts) => parts.iter().all(|r| r.contains_coords(space, x)),
        }
    }

    /// Inequality form, when the region has one: boxes without wrapping
    /// arcs, halfspace polytopes and full-dimensional hulls in up to 3-D.
    pub fn to_halfspaces(&self) -> Option<Vec<Halfspace>> {
        match &self.kind {
            RegionKind::Box(intervals) => {
                let d = intervals.len();
                let mut out = Vec::with_capacity(2 * d);
                for (i, &(lo, hi)) in intervals.iter().enumerate() {
                    if lo > hi {
                        return None;
                    }
                    let mut up = vec![0.0; d];
                    up[i] = 1.0;
                    let mut down = vec![0.0; d];
                    down[i] = -1.0;
                    out.push(Halfspace::new(up, hi));
                    out.push(Halfspace::new(down, -lo));
                }
                Some(out)
            }
            RegionKind::Halfspaces(hs) => Some(hs.clone()),
            RegionKind::Hull(_) => self.facets.clone(),
            _ => None,
        }
    }

    /// Finite vertex set whose convex hull is the region (hull generators
    /// or box corners). Only available for boxes without wrapping arcs in
    /// at most 16 dimensions, and for hulls.
    pub fn vertices(&self) -> Option<Vec<Vec<f64>>> {
        match &self.kind {
            RegionKind::Hull(g) => Some(g.iter().map(|p| p.coords().to_vec()).collect()),
            RegionKind::Box(intervals) if intervals.len() <= 16 => {
                if intervals.iter().any(|(lo, hi)| lo > hi) {
                    return None;
                }
                let d = intervals.len();
                Some(
                    (0..1usize << d)
                        .map(|mask| {
                            (0..d)
                                .map(|i| {
                                    if mask >> i & 1 == 1 {
                                        intervals[i].1
                                    } else {
                                        intervals[i].0
                                    }
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Geometric centroid. Boxes and balls are closed-form; every other
    /// kind is estimated from [`CENTROID_DRAWS`] uniform bounding-box
    /// draws with a fixed seed.
    pub fn centroid(&self, space: &ConceptualSpace, seed: u64) -> Result<Point> {
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        match &self.kind {
            RegionKind::Box(intervals) => Ok(space.point_unchecked(
                space
                    .dimensions()
                    .zip(intervals)
                    .map(|(dim, &(lo, hi))| match dim.kind {
                        DimensionKind::Linear { .. } => lo + (hi - lo) / 2.0,
                        DimensionKind::Circular { period } => {
                            dim.wrap(lo + arc_length(lo, hi, period) / 2.0)
                        }
                    })
                    .collect(),
            )),
            RegionKind::Ball { center, .. } => Ok(center.clone()),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let members = rejection_sample(space, self, CENTROID_DRAWS, usize::MAX, &mut rng)?;
                let rows: Vec<&[f64]> = members.iter().map(Vec::as_slice).collect();
                Ok(space.point_unchecked(space.mean_coords(&rows)))
            }
        }
    }

    /// Up to `n` uniformly distributed member points.
    pub fn sample(&self, space: &ConceptualSpace, n: usize, seed: u64) -> Result<Vec<Point>> {
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(sample_members(space, self, n, &mut rng)?
            .into_iter()
            .map(|c| space.point_unchecked(c))
            .collect())
    }
}

fn in_bounds(bounds: &[(f64, f64)], x: &[f64]) -> bool {
    bounds
        .iter()
        .zip(x)
        .all(|(&(lo, hi), &v)| v >= lo - CONTAINS_TOL && v <= hi + CONTAINS_TOL)
}

/// Bounding box of a polytope within the chart, or `None` when empty.
pub(crate) fn polytope_bounds(
    space: &ConceptualSpace,
    constraints: &[Halfspace],
) -> Option<Vec<(f64, f64)>> {
    let chart = space.chart_bounds();
    let rows: Vec<(Vec<f64>, f64)> = constraints
        .iter()
        .map(|h| (h.normal.clone(), h.offset + CONTAINS_TOL))
        .collect();
    let d = space.dims();
    let mut bounds = Vec::with_capacity(d);
    for i in 0..d {
        let mut c = vec![0.0; d];
        c[i] = 1.0;
        let (_, hi) = lp::maximize_in_box(&c, &rows, &chart, 1e-9)?;
        c[i] = -1.0;
        let (_, neg_lo) = lp::maximize_in_box(&c, &rows, &chart, 1e-9)?;
        bounds.push(((-neg_lo).max(chart[i].0), hi.min(chart[i].1)));
    }
    Some(bounds)
}

pub(crate) fn draw_in(bounds: &[(f64, f64)], rng: &mut ChaCha8Rng, out: &mut [f64]) {
    for (o, &(lo, hi)) in out.iter_mut().zip(bounds) {
        *o = if hi > lo {
            lo + (hi - lo) * rng.random::<f64>()
        } else {
            lo
        };
    }
}

/// Accepted points out of `draws` uniform draws in the bounding box,
/// keeping at most `keep`. Fails when the acceptance rate is below
/// [`MIN_ACCEPTANCE`].
pub(crate) fn rejection_sample<M: Membership + ?Sized>(
    space: &ConceptualSpace,
    region: &M,
    draws: usize,
    keep: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<f64>>> {
    let bounds = region.sampling_bounds();
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Err(Error::SamplingFailed { rate: 0.0 });
    }
    let mut x = vec![0.0; space.dims()];
    if bounds.iter().all(|(lo, hi)| lo == hi) {
        draw_in(bounds, rng, &mut x);
        return if region.contains_coords(space, &x) {
            Ok(vec![x])
        } else {
            Err(Error::SamplingFailed { rate: 0.0 })
        };
    }
    let mut accepted = Vec::new();
    let mut hits = 0usize;
    for _ in 0..draws {
        draw_in(bounds, rng, &mut x);
        if region.contains_coords(space, &x) {
            hits += 1;
            if accepted.len() < keep {
                accepted.push(x.clone());
            }
        }
    }
    let rate = hits as f64 / draws as f64;
    if rate < MIN_ACCEPTANCE {
        return Err(Error::SamplingFailed { rate });
    }
    Ok(accepted)
}

/// `n` member points: direct for boxes, rejection sampling otherwise
/// (at most `n / MIN_ACCEPTANCE` draws).
pub(crate) fn sample_members<M: Membership + ?Sized>(
    space: &ConceptualSpace,
    region: &M,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<f64>>> {
    let bounds = region.sampling_bounds();
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Err(Error::SamplingFailed { rate: 0.0 });
    }
    let mut x = vec![0.0; space.dims()];
    let mut out = Vec::with_capacity(n);
    let max_draws = ((n as f64) / MIN_ACCEPTANCE).ceil() as usize;
    let mut draws = 0usize;
    while out.len() < n {
        if draws >= max_draws {
            return Err(Error::SamplingFailed {
                rate: out.len() as f64 / draws as f64,
            });
        }
        draws += 1;
        draw_in(bounds, rng, &mut x);
        if region.contains_coords(space, &x) {
            out.push(x.clone());
        }
    }
    Ok(out)
}

impl Region {
    /// Uniform draw inside a box region, honoring wrapping arcs.
    pub(crate) fn box_draw(&self, space: &ConceptualSpace, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
        let RegionKind::Box(intervals) = &self.kind else {
            return None;
        };
        Some(
            space
                .dimensions()
                .zip(intervals)
                .map(|(dim, &(lo, hi))| match dim.kind {
                    DimensionKind::Linear { .. } => lo + (hi - lo) * rng.random::<f64>(),
                    DimensionKind::Circular { period } => {
                        dim.wrap(lo + arc_length(lo, hi, period) * rng.random::<f64>())
                    }
                })
                .collect(),
        )
    }
}

/// Member samples for spread estimates: direct for boxes, rejection otherwise.
pub(crate) fn spread_samples(
    space: &ConceptualSpace,
    region: &Region,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<f64>>> {
    if matches!(region.kind, RegionKind::Box(_)) {
        return Ok((0..n).filter_map(|_| region.box_draw(space, rng)).collect());
    }
    if region.bounds.iter().all(|(lo, hi)| lo == hi) {
        return rejection_sample(space, region, 1, 1, rng);
    }
    sample_members(space, region, n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Dimension, Domain};

    fn plane(lo: f64, hi: f64) -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "plane",
            vec![Dimension::linear("x", lo, hi), Dimension::linear("y", lo, hi)],
        )])
        .unwrap()
    }

    fn pt(s: &ConceptualSpace, x: f64, y: f64) -> Point {
        s.point([x, y]).unwrap()
    }

    #[test]
    fn box_contains() {
        let s = plane(-5.0, 5.0);
        let b = Region::boxed(&s, vec![(0.0, 2.0), (0.0, 2.0)]).unwrap();
        assert!(b.contains(&s, &pt(&s, 1.0, 1.0)).unwrap());
        assert!(b.contains(&s, &pt(&s, 2.0, 0.0)).unwrap());
        assert!(!b.contains(&s, &pt(&s, 2.1, 0.0)).unwrap());
    }

    #[test]
    fn ball_boundary_tolerance() {
        let s = plane(-5.0, 5.0);
        let ball = Region::ball(&s, pt(&s, 0.0, 0.0), 1.0).unwrap();
        assert!(ball.contains(&s, &pt(&s, 0.0, 1.0)).unwrap());
        assert!(!ball.contains(&s, &pt(&s, 0.0, 1.0000001)).unwrap());
        assert!(Region::ball(&s, pt(&s, 0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn hull_triangle() {
        let s = plane(-5.0, 5.0);
        let tri = Region::hull(&s, vec![pt(&s, 0.0, 0.0), pt(&s, 1.0, 0.0), pt(&s, 0.0, 1.0)]).unwrap();
        assert!(tri.contains(&s, &pt(&s, 0.25, 0.25)).unwrap());
        assert!(!tri.contains(&s, &pt(&s, 1.0, 1.0)).unwrap());
    }

    #[test]
    fn degenerate_hulls_use_feasibility() {
        let s = plane(-5.0, 5.0);
        let single = Region::hull(&s, vec![pt(&s, 0.0, 0.0)]).unwrap();
        assert!(single.contains(&s, &pt(&s, 0.0, 0.0)).unwrap());
        assert!(!single.contains(&s, &pt(&s, 0.0, 0.1)).unwrap());
        let c = single.centroid(&s, 1).unwrap();
        assert_eq!(c.coords(), &[0.0, 0.0]);
        let seg = Region::hull(&s, vec![pt(&s, 0.0, 0.0), pt(&s, 2.0, 0.0)]).unwrap();
        assert!(seg.contains(&s, &pt(&s, 1.0, 0.0)).unwrap());
        assert!(!seg.contains(&s, &pt(&s, 1.0, 0.5)).unwrap());
    }

    #[test]
    fn box_centroid_is_exact() {
        let s = plane(-5.0, 5.0);
        let b = Region::boxed(&s, vec![(0.0, 2.0), (0.0, 4.0)]).unwrap();
        assert_eq!(b.centroid(&s, 0).unwrap().coords(), &[1.0, 2.0]);
    }

    #[test]
    fn sampled_centroids() {
        let s = plane(-5.0, 5.0);
        let tri = Region::hull(&s, vec![pt(&s, 0.0, 0.0), pt(&s, 3.0, 0.0), pt(&s, 0.0, 3.0)]).unwrap();
        let c = tri.centroid(&s, 42).unwrap();
        assert!((c.coords()[0] - 1.0).abs() < 0.02 && (c.coords()[1] - 1.0).abs() < 0.02);

        let square = Region::halfspaces(
            &s,
            vec![
                Halfspace::new(vec![1.0, 0.0], 1.0),
                Halfspace::new(vec![-1.0, 0.0], 0.0),
                Halfspace::new(vec![0.0, 1.0], 1.0),
                Halfspace::new(vec![0.0, -1.0], 0.0),
            ],
        )
        .unwrap();
        let b = square.bounds();
        assert!((b[0].0).abs() < 1e-6 && (b[0].1 - 1.0).abs() < 1e-6);
        let c = square.centroid(&s, 42).unwrap();
        assert!((c.coords()[0] - 0.5).abs() < 0.02 && (c.coords()[1] - 0.5).abs() < 0.02);
        // identical seed, identical estimate
        assert_eq!(c, square.centroid(&s, 42).unwrap());
    }

    #[test]
    fn thin_region_fails_to_sample() {
        let s = plane(-5.0, 5.0);
        // a sliver along the diagonal
        let sliver = Region::hull(
            &s,
            vec![pt(&s, -5.0, -5.0), pt(&s, 5.0, 5.0), pt(&s, 5.0, 5.0 - 1e-7)],
        )
        .unwrap();
        assert!(matches!(sliver.centroid(&s, 1), Err(Error::SamplingFailed { .. })));
    }

    #[test]
    fn empty_halfspaces_rejected() {
        let s = plane(-5.0, 5.0);
        let r = Region::halfspaces(
            &s,
            vec![
                Halfspace::new(vec![1.0, 0.0], -1.0),
                Halfspace::new(vec![-1.0, 0.0], -1.0),
            ],
        );
        assert!(matches!(r, Err(Error::InvalidRegion(_))));
    }

    #[test]
    fn wrapping_arc_box() {
        let s = ConceptualSpace::new(vec![Domain::new(
            "color",
            vec![Dimension::circular("hue", 360.0)],
        )])
        .unwrap();
        let arc = Region::boxed(&s, vec![(350.0, 10.0)]).unwrap();
        assert!(arc.contains(&s, &s.point([355.0]).unwrap()).unwrap());
        assert!(arc.contains(&s, &s.point([5.0]).unwrap()).unwrap());
        assert!(!arc.contains(&s, &s.point([20.0]).unwrap()).unwrap());
        assert_eq!(arc.centroid(&s, 0).unwrap().coords(), &[0.0]);
        assert!(arc.to_halfspaces().is_none());
        assert!(Region::boxed(&s, vec![(0.0, 200.0)]).is_err());
    }

    #[test]
    fn hull_may_not_exceed_half_period() {
        let s = ConceptualSpace::new(vec![Domain::new(
            "color",
            vec![Dimension::circular("hue", 360.0)],
        )])
        .unwrap();
        let pts = vec![s.point([10.0]).unwrap(), s.point([300.0]).unwrap()];
        assert!(Region::hull(&s, pts).is_err());
    }

    #[test]
    fn box_vertices() {
        let s = plane(-5.0, 5.0);
        let b = Region::boxed(&s, vec![(0.0, 1.0), (2.0, 3.0)]).unwrap();
        let v = b.vertices().unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.contains(&vec![1.0, 3.0]));
    }
}

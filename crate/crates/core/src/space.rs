//! Quality dimensions, domains and the metric they induce.
//!
//! A [`ConceptualSpace`] is an ordered list of [`Domain`]s, each grouping
//! integral [`Dimension`]s under one weighted Minkowski metric. Domain
//! distances are combined with a second weighted Minkowski rule, city-block
//! by default:
//!
//! ```text
//! d_k(p, q) = ( sum_i  w_i |p_i - q_i|^p_k )^(1/p_k)        within domain k
//! d(p, q)   = ( sum_k  W_k d_k(p, q)^q )^(1/q)               across domains
//! ```
//!
//! Circular dimensions measure the shorter arc, so their per-coordinate
//! delta never exceeds half the period.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Topology of a single quality dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DimensionKind {
    Linear { min: f64, max: f64 },
    /// Values wrap modulo `period` (hue in degrees, time of day, ...).
    Circular { period: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dimension {
    pub name: String,
    pub kind: DimensionKind,
    /// Salience of the dimension inside its domain.
    pub weight: f64,
}

impl Dimension {
    pub fn linear(name: impl Into<String>, min: f64, max: f64) -> Self {
        Dimension {
            name: name.into(),
            kind: DimensionKind::Linear { min, max },
            weight: 1.0,
        }
    }

    pub fn circular(name: impl Into<String>, period: f64) -> Self {
        Dimension {
            name: name.into(),
            kind: DimensionKind::Circular { period },
            weight: 1.0,
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn is_circular(&self) -> bool {
        matches!(self.kind, DimensionKind::Circular { .. })
    }

    /// Chart interval of the coordinate: `[min, max]` or `[0, period]`.
    pub fn chart_bounds(&self) -> (f64, f64) {
        match self.kind {
            DimensionKind::Linear { min, max } => (min, max),
            DimensionKind::Circular { period } => (0.0, period),
        }
    }

    /// Unsigned per-coordinate difference, shorter arc for circular dimensions.
    #[inline]
    pub fn delta(&self, a: f64, b: f64) -> f64 {
        match self.kind {
            DimensionKind::Linear { .. } => (a - b).abs(),
            DimensionKind::Circular { period } => {
                // |a - b| keeps the result exactly symmetric
                let raw = (a - b).abs() % period;
                raw.min(period - raw)
            }
        }
    }

    /// Signed displacement from `a` to `b` along the shorter arc.
    #[inline]
    pub fn signed_delta(&self, a: f64, b: f64) -> f64 {
        let raw = b - a;
        match self.kind {
            DimensionKind::Linear { .. } => raw,
            DimensionKind::Circular { period } => {
                let wrapped = (raw + period / 2.0).rem_euclid(period) - period / 2.0;
                // keep the antipodal case symmetric with `delta`
                if wrapped == -period / 2.0 && raw > 0.0 {
                    period / 2.0
                } else {
                    wrapped
                }
            }
        }
    }

    /// Maps a raw value into the dimension's chart: circular values are
    /// reduced to `[0, period)`, linear values are clamped to `[min, max]`.
    #[inline]
    pub fn wrap(&self, value: f64) -> f64 {
        match self.kind {
            DimensionKind::Linear { min, max } => value.clamp(min, max),
            DimensionKind::Circular { period } => wrap_period(value, period),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::InvalidSpace("dimension with empty name".into()));
        }
        if !(self.weight.is_finite() && self.weight > 0.0) {
            return Err(Error::InvalidSpace(format!(
                "dimension `{}` has nonpositive weight {}",
                self.name, self.weight
            )));
        }
        match self.kind {
            DimensionKind::Linear { min, max } => {
                if !(min.is_finite() && max.is_finite() && min < max) {
                    return Err(Error::InvalidSpace(format!(
                        "dimension `{}` needs min < max, got [{min}, {max}]",
                        self.name
                    )));
                }
            }
            DimensionKind::Circular { period } => {
                if !(period.is_finite() && period > 0.0) {
                    return Err(Error::InvalidSpace(format!(
                        "dimension `{}` has nonpositive period {period}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn wrap_period(value: f64, period: f64) -> f64 {
    let r = value.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// A set of integral dimensions sharing one Minkowski metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub name: String,
    pub dimensions: Vec<Dimension>,
    /// Minkowski exponent inside the domain, `>= 1`.
    pub exponent: f64,
    /// Salience of the domain as a whole.
    pub weight: f64,
}

impl Domain {
    pub fn new(name: impl Into<String>, dimensions: Vec<Dimension>) -> Self {
        Domain {
            name: name.into(),
            dimensions,
            exponent: 2.0,
            weight: 1.0,
        }
    }

    pub fn with_exponent(mut self, exponent: f64) -> Self {
        self.exponent = exponent;
        self
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::InvalidSpace("domain with empty name".into()));
        }
        if self.dimensions.is_empty() {
            return Err(Error::InvalidSpace(format!(
                "domain `{}` has no dimensions",
                self.name
            )));
        }
        if !(self.exponent.is_finite() && self.exponent >= 1.0) {
            return Err(Error::InvalidSpace(format!(
                "domain `{}` needs a Minkowski exponent >= 1, got {}",
                self.name, self.exponent
            )));
        }
        if !(self.weight.is_finite() && self.weight > 0.0) {
            return Err(Error::InvalidSpace(format!(
                "domain `{}` has nonpositive weight {}",
                self.name, self.weight
            )));
        }
        let mut seen = HashSet::new();
        for dim in &self.dimensions {
            dim.validate()?;
            if !seen.insert(dim.name.as_str()) {
                return Err(Error::InvalidSpace(format!(
                    "duplicate dimension `{}` in domain `{}`",
                    dim.name, self.name
                )));
            }
        }
        Ok(())
    }
}

/// Identity of a space, used to reject points and regions from another one.
///
/// Two structurally identical spaces share an id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceId(u64);

#[derive(Debug, Clone)]
pub struct ConceptualSpace {
    domains: Vec<Domain>,
    inter_exponent: f64,
    /// Flattened dimension order: (domain index, dimension).
    flat: Vec<(usize, Dimension)>,
    id: SpaceId,
}

impl PartialEq for ConceptualSpace {
    fn eq(&self, other: &Self) -> bool {
        self.domains == other.domains && self.inter_exponent == other.inter_exponent
    }
}

impl ConceptualSpace {
    /// Space with the default city-block combination across domains.
    pub fn new(domains: Vec<Domain>) -> Result<Self> {
        Self::with_inter_exponent(domains, 1.0)
    }

    pub fn with_inter_exponent(domains: Vec<Domain>, inter_exponent: f64) -> Result<Self> {
        if domains.is_empty() {
            return Err(Error::InvalidSpace("space has no domains".into()));
        }
        if !(inter_exponent.is_finite() && inter_exponent >= 1.0) {
            return Err(Error::InvalidSpace(format!(
                "inter-domain exponent must be >= 1, got {inter_exponent}"
            )));
        }
        let mut seen = HashSet::new();
        for domain in &domains {
            domain.validate()?;
            if !seen.insert(domain.name.as_str()) {
                return Err(Error::InvalidSpace(format!(
                    "duplicate domain `{}`",
                    domain.name
                )));
            }
        }
        let flat = domains
            .iter()
            .enumerate()
            .flat_map(|(k, d)| d.dimensions.iter().map(move |dim| (k, dim.clone())))
            .collect();
        let mut hasher = DefaultHasher::new();
        inter_exponent.to_bits().hash(&mut hasher);
        for domain in &domains {
            domain.name.hash(&mut hasher);
            domain.exponent.to_bits().hash(&mut hasher);
            domain.weight.to_bits().hash(&mut hasher);
            for dim in &domain.dimensions {
                dim.name.hash(&mut hasher);
                dim.weight.to_bits().hash(&mut hasher);
                match dim.kind {
                    DimensionKind::Linear { min, max } => {
                        0u8.hash(&mut hasher);
                        min.to_bits().hash(&mut hasher);
                        max.to_bits().hash(&mut hasher);
                    }
                    DimensionKind::Circular { period } => {
                        1u8.hash(&mut hasher);
                        period.to_bits().hash(&mut hasher);
                    }
                }
            }
        }
        Ok(ConceptualSpace {
            domains,
            inter_exponent,
            flat,
            id: SpaceId(hasher.finish()),
        })
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn inter_exponent(&self) -> f64 {
        self.inter_exponent
    }

    /// Total number of dimensions.
    pub fn dims(&self) -> usize {
        self.flat.len()
    }

    /// Dimension at flat index `i`.
    pub fn dimension(&self, i: usize) -> &Dimension {
        &self.flat[i].1
    }

    pub fn dimensions(&self) -> impl Iterator<Item = &Dimension> {
        self.flat.iter().map(|(_, d)| d)
    }

    /// Qualified `domain.dimension` names in coordinate order.
    pub fn dimension_names(&self) -> Vec<String> {
        self.flat
            .iter()
            .map(|(k, d)| format!("{}.{}", self.domains[*k].name, d.name))
            .collect()
    }

    /// True when every domain uses the Euclidean (p = 2) intra-domain metric.
    pub fn is_euclidean(&self) -> bool {
        self.domains.iter().all(|d| d.exponent == 2.0)
    }

    pub fn has_circular(&self) -> bool {
        self.dimensions().any(Dimension::is_circular)
    }

    /// Chart bounds of every coordinate.
    pub fn chart_bounds(&self) -> Vec<(f64, f64)> {
        self.dimensions().map(Dimension::chart_bounds).collect()
    }

    /// Validates coordinates and normalizes circular ones into `[0, period)`.
    pub fn point(&self, coords: impl Into<Vec<f64>>) -> Result<Point> {
        let mut coords = coords.into();
        if coords.len() != self.dims() {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.dims(),
                coords.len()
            )));
        }
        for (c, dim) in coords.iter_mut().zip(self.dimensions()) {
            if !c.is_finite() {
                return Err(Error::InvalidPoint(format!(
                    "non-finite coordinate for `{}`",
                    dim.name
                )));
            }
            match dim.kind {
                DimensionKind::Linear { min, max } => {
                    if *c < min || *c > max {
                        return Err(Error::InvalidPoint(format!(
                            "coordinate {c} for `{}` outside [{min}, {max}]",
                            dim.name
                        )));
                    }
                }
                DimensionKind::Circular { period } => *c = wrap_period(*c, period),
            }
        }
        Ok(Point {
            coords,
            space: self.id,
        })
    }

    /// Like [`point`](Self::point) but clamps linear coordinates into range.
    pub fn point_clamped(&self, coords: impl Into<Vec<f64>>) -> Result<Point> {
        let mut coords = coords.into();
        if coords.len() != self.dims() {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.dims(),
                coords.len()
            )));
        }
        for (c, dim) in coords.iter_mut().zip(self.dimensions()) {
            if !c.is_finite() {
                return Err(Error::InvalidPoint(format!(
                    "non-finite coordinate for `{}`",
                    dim.name
                )));
            }
            *c = dim.wrap(*c);
        }
        Ok(Point {
            coords,
            space: self.id,
        })
    }

    /// Builds a point from coordinates already known to be in the chart.
    pub(crate) fn point_unchecked(&self, coords: Vec<f64>) -> Point {
        debug_assert_eq!(coords.len(), self.dims());
        Point {
            coords,
            space: self.id,
        }
    }

    pub(crate) fn check(&self, p: &Point) -> Result<()> {
        if p.space != self.id {
            Err(Error::SpaceMismatch)
        } else {
            Ok(())
        }
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Result<f64> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.coord_distance(&p.coords, &q.coords))
    }

    /// `exp(-distance / decay)`; equals 1 exactly when the points coincide.
    pub fn similarity(&self, p: &Point, q: &Point, decay: f64) -> Result<f64> {
        if !(decay.is_finite() && decay > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "similarity decay must be positive, got {decay}"
            )));
        }
        Ok((-self.distance(p, q)? / decay).exp())
    }

    pub(crate) fn coord_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let q = self.inter_exponent;
        let mut total = 0.0;
        let mut offset = 0;
        for domain in &self.domains {
            let n = domain.dimensions.len();
            let d = domain_distance(domain, &a[offset..offset + n], &b[offset..offset + n]);
            offset += n;
            total += domain.weight * if q == 1.0 { d } else { d.powf(q) };
        }
        if q == 1.0 {
            total
        } else {
            total.powf(1.0 / q)
        }
    }

    /// Largest coordinate displacement along dimension `i` reachable within
    /// distance `radius` when every other coordinate is held fixed.
    pub(crate) fn axis_reach(&self, i: usize, radius: f64) -> f64 {
        let (k, dim) = &self.flat[i];
        let domain = &self.domains[*k];
        radius
            / (domain.weight.powf(1.0 / self.inter_exponent)
                * dim.weight.powf(1.0 / domain.exponent))
    }

    /// Point at fraction `t` of the way from `a` to `b`; circular
    /// coordinates travel along the shorter arc.
    pub fn lerp(&self, a: &Point, b: &Point, t: f64) -> Result<Point> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.point_unchecked(self.lerp_coords(&a.coords, &b.coords, t)))
    }

    pub(crate) fn lerp_coords(&self, a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
        self.dimensions()
            .zip(a.iter().zip(b))
            .map(|(dim, (&x, &y))| match dim.kind {
                DimensionKind::Linear { .. } => dim.wrap(x + t * (y - x)),
                DimensionKind::Circular { .. } => dim.wrap(x + t * dim.signed_delta(x, y)),
            })
            .collect()
    }

    /// Arithmetic mean; circular coordinates are unwrapped around the first
    /// point before averaging, which is exact for sets spanning less than
    /// half a period.
    pub fn mean(&self, points: &[Point]) -> Result<Point> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("mean of no points".into()));
        }
        for p in points {
            self.check(p)?;
        }
        let rows: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();
        Ok(self.point_unchecked(self.mean_coords(&rows)))
    }

    pub(crate) fn mean_coords(&self, rows: &[&[f64]]) -> Vec<f64> {
        let n = rows.len() as f64;
        let reference = rows[0];
        self.dimensions()
            .enumerate()
            .map(|(i, dim)| {
                let r = reference[i];
                let sum: f64 = rows.iter().map(|row| dim.signed_delta(r, row[i])).sum();
                dim.wrap(r + sum / n)
            })
            .collect()
    }
}

#[inline]
fn domain_distance(domain: &Domain, a: &[f64], b: &[f64]) -> f64 {
    let p = domain.exponent;
    let mut acc = 0.0;
    for ((dim, &x), &y) in domain.dimensions.iter().zip(a).zip(b) {
        let delta = dim.delta(x, y);
        acc += dim.weight
            * if p == 2.0 {
                delta * delta
            } else if p == 1.0 {
                delta
            } else {
                delta.powf(p)
            };
    }
    if p == 2.0 {
        acc.sqrt()
    } else if p == 1.0 {
        acc
    } else {
        acc.powf(1.0 / p)
    }
}

/// An entity in a conceptual space: one coordinate per dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
    space: SpaceId,
}

impl Point {
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn space_id(&self) -> SpaceId {
        self.space
    }

    /// Coordinate-wise equality within `tol`.
    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        self.space == other.space
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "plane",
            vec![
                Dimension::linear("x", -10.0, 10.0),
                Dimension::linear("y", -10.0, 10.0),
            ],
        )])
        .unwrap()
    }

    fn hue() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "color",
            vec![Dimension::circular("hue", 360.0)],
        )])
        .unwrap()
    }

    #[test]
    fn minimal_space() {
        let s = ConceptualSpace::new(vec![Domain::new(
            "d",
            vec![Dimension::linear("x", 0.0, 1.0)],
        )])
        .unwrap();
        assert_eq!(s.dims(), 1);
        assert_eq!(s.domains().len(), 1);
    }

    #[test]
    fn color_domain() {
        let s = ConceptualSpace::new(vec![Domain::new(
            "color",
            vec![
                Dimension::circular("hue", 360.0),
                Dimension::linear("brightness", 0.0, 1.0),
            ],
        )])
        .unwrap();
        assert_eq!(s.dims(), 2);
        assert_eq!(s.dimension_names(), ["color.hue", "color.brightness"]);
    }

    #[test]
    fn rejects_invalid_spaces() {
        let d = || Domain::new("a", vec![Dimension::linear("x", 0.0, 1.0)]);
        assert!(matches!(
            ConceptualSpace::new(vec![d(), d()]),
            Err(Error::InvalidSpace(_))
        ));
        assert!(ConceptualSpace::new(vec![Domain::new(
            "a",
            vec![Dimension::linear("x", 1.0, 1.0)]
        )])
        .is_err());
        assert!(ConceptualSpace::new(vec![Domain::new(
            "a",
            vec![Dimension::circular("h", 0.0)]
        )])
        .is_err());
        assert!(ConceptualSpace::new(vec![Domain::new(
            "a",
            vec![Dimension::linear("x", 0.0, 1.0).with_weight(0.0)]
        )])
        .is_err());
        assert!(ConceptualSpace::new(vec![Domain::new(
            "a",
            vec![
                Dimension::linear("x", 0.0, 1.0),
                Dimension::linear("x", 0.0, 1.0)
            ]
        )])
        .is_err());
        assert!(ConceptualSpace::new(vec![d().with_exponent(0.5)]).is_err());
        assert!(ConceptualSpace::new(vec![]).is_err());
    }

    #[test]
    fn pythagorean_distance() {
        let s = plane();
        let p = s.point([0.0, 0.0]).unwrap();
        let q = s.point([3.0, 4.0]).unwrap();
        assert_eq!(s.distance(&p, &q).unwrap(), 5.0);
        assert_eq!(s.distance(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn circular_wraparound() {
        let s = hue();
        let p = s.point([350.0]).unwrap();
        let q = s.point([10.0]).unwrap();
        assert!((s.distance(&p, &q).unwrap() - 20.0).abs() < 1e-12);
        assert_eq!(s.point([-10.0]).unwrap().coords(), &[350.0]);
        assert_eq!(s.point([720.0]).unwrap().coords(), &[0.0]);
    }

    #[test]
    fn similarity_values() {
        let s = plane();
        let p = s.point([0.0, 0.0]).unwrap();
        let q = s.point([3.0, 4.0]).unwrap();
        assert_eq!(s.similarity(&p, &p, 2.0).unwrap(), 1.0);
        assert!((s.similarity(&p, &q, 5.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!(s.similarity(&p, &q, 0.0).is_err());
        assert!(s.similarity(&p, &q, -1.0).is_err());
    }

    #[test]
    fn mismatched_space() {
        let p = plane().point([0.0, 0.0]).unwrap();
        let h = hue();
        let q = h.point([1.0]).unwrap();
        assert_eq!(h.distance(&p, &q), Err(Error::SpaceMismatch));
    }

    #[test]
    fn point_validation() {
        let s = plane();
        assert!(s.point([11.0, 0.0]).is_err());
        assert!(s.point([0.0]).is_err());
        assert!(s.point([f64::NAN, 0.0]).is_err());
        assert_eq!(s.point_clamped([11.0, 0.0]).unwrap().coords(), &[10.0, 0.0]);
    }

    #[test]
    fn weighted_domains_combine_city_block() {
        let s = ConceptualSpace::new(vec![
            Domain::new("a", vec![Dimension::linear("x", 0.0, 10.0)]).with_weight(2.0),
            Domain::new("b", vec![Dimension::linear("y", 0.0, 10.0)]),
        ])
        .unwrap();
        let p = s.point([0.0, 0.0]).unwrap();
        let q = s.point([3.0, 4.0]).unwrap();
        assert_eq!(s.distance(&p, &q).unwrap(), 2.0 * 3.0 + 4.0);
        assert!((s.axis_reach(0, 6.0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn lerp_takes_shorter_arc() {
        let s = hue();
        let a = s.point([350.0]).unwrap();
        let b = s.point([10.0]).unwrap();
        let m = s.lerp(&a, &b, 0.5).unwrap();
        assert!(m.coords()[0].abs() < 1e-9 || (m.coords()[0] - 360.0).abs() < 1e-9);
        let mean = s.mean(&[a, b]).unwrap();
        assert!(mean.coords()[0] < 1e-9);
    }

    #[test]
    fn antipodal_delta_is_half_period() {
        let dim = Dimension::circular("h", 360.0);
        assert_eq!(dim.delta(0.0, 180.0), 180.0);
        assert_eq!(dim.signed_delta(0.0, 180.0).abs(), 180.0);
        assert_eq!(dim.signed_delta(350.0, 10.0), 20.0);
        assert_eq!(dim.signed_delta(10.0, 350.0), -20.0);
    }
}

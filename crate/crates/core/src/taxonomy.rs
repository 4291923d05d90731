//! Symbolic taxonomies grounded in regions.
//!
//! `child isa parent` is read geometrically as region containment. A
//! [`Taxonomy`] combines asserted edges with containments it discovers
//! between its concepts, and [`dual_categorize`] chains a fast
//! nearest-prototype decision with a symbolic lookup of ancestors.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lp;
use crate::regions::{Concept, Region, RegionKind, CONTAINS_TOL};
use crate::space::{ConceptualSpace, DimensionKind, Point, SpaceId};
use crate::tessellation::Tessellation;

/// Child points drawn when containment has to be sampled.
pub const DEFAULT_SUBSUMPTION_SAMPLES: usize = 10_000;

/// Outcome of a containment test. `exact` is false when the answer rests
/// on sampled child points; a sampled `true` can miss a thin sliver of the
/// child outside the parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subsumption {
    pub holds: bool,
    pub exact: bool,
}

/// Whether every instance of `child` is an instance of `parent`.
///
/// Exact paths: box in box, any child with finite vertices (hulls and
/// non-wrapping boxes) in a parent convex in chart coordinates, and
/// polytope children in polytope parents via one LP per parent
/// constraint. Everything else samples `n_samples` child points.
pub fn subsumes(
    space: &ConceptualSpace,
    parent: &Concept,
    child: &Concept,
    n_samples: usize,
    seed: u64,
) -> Result<Subsumption> {
    let (p, c) = (parent.region(), child.region());
    if p.space_id() != space.id() || c.space_id() != space.id() {
        return Err(Error::SpaceMismatch);
    }
    if n_samples == 0 {
        return Err(Error::InvalidArgument("subsumption needs at least one sample".into()));
    }
    if let (RegionKind::Box(outer), RegionKind::Box(inner)) = (p.kind(), c.kind()) {
        return Ok(exact(box_in_box(space, outer, inner)));
    }
    if chart_convex(space, p) {
        if let Some(vertices) = c.vertices() {
            let holds = vertices.iter().all(|v| p.contains_coords(space, v));
            return Ok(exact(holds));
        }
    }
    if let (Some(outer), Some(inner)) = (p.to_halfspaces(), c.to_halfspaces()) {
        let constraints: Vec<(Vec<f64>, f64)> =
            inner.into_iter().map(|h| (h.normal, h.offset)).collect();
        let mut holds = true;
        for h in &outer {
            match lp::maximize_in_box(&h.normal, &constraints, c.bounds(), CONTAINS_TOL) {
                Some((_, value)) if value > h.offset + CONTAINS_TOL => {
                    holds = false;
                    break;
                }
                // an empty child is contained in anything
                _ => {}
            }
        }
        return Ok(exact(holds));
    }
    let points = c.sample(space, n_samples, seed)?;
    let holds = points.iter().all(|x| p.contains_coords(space, x.coords()));
    Ok(Subsumption { holds, exact: false })
}

fn exact(holds: bool) -> Subsumption {
    Subsumption { holds, exact: true }
}

fn box_in_box(space: &ConceptualSpace, outer: &[(f64, f64)], inner: &[(f64, f64)]) -> bool {
    space
        .dimensions()
        .zip(outer.iter().zip(inner))
        .all(|(dim, (&(olo, ohi), &(ilo, ihi)))| match dim.kind {
            DimensionKind::Linear { .. } => {
                ilo >= olo - CONTAINS_TOL && ihi <= ohi + CONTAINS_TOL
            }
            DimensionKind::Circular { period } => {
                let outer_len = (ohi - olo).rem_euclid(period);
                let inner_len = (ihi - ilo).rem_euclid(period);
                let mut start = (ilo - olo).rem_euclid(period);
                if start > period - CONTAINS_TOL {
                    start -= period;
                }
                start >= -CONTAINS_TOL && start + inner_len <= outer_len + CONTAINS_TOL
            }
        })
}

/// Convex as a subset of chart coordinates, so that containing a finite
/// vertex set implies containing its hull.
fn chart_convex(space: &ConceptualSpace, region: &Region) -> bool {
    match region.kind() {
        RegionKind::Box(intervals) => intervals.iter().all(|(lo, hi)| lo <= hi),
        RegionKind::Ball { .. } => !space.has_circular(),
        RegionKind::Halfspaces(_) | RegionKind::Hull(_) => true,
        RegionKind::Intersection(parts) => parts.iter().all(|r| chart_convex(space, r)),
    }
}

/// Sampling parameters for containment tests that have no exact path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsumptionConfig {
    pub n_samples: usize,
    pub seed: u64,
}

impl Default for SubsumptionConfig {
    fn default() -> Self {
        SubsumptionConfig {
            n_samples: DEFAULT_SUBSUMPTION_SAMPLES,
            seed: 42,
        }
    }
}

/// A containment discovered between two concepts with no asserted path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveredEdge {
    pub child: String,
    pub parent: String,
    pub exact: bool,
}

/// Concepts plus `child isa parent` assertions over them, closed under
/// geometric discovery when built.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    space: SpaceId,
    concepts: BTreeMap<String, Concept>,
    asserted: Vec<(String, String)>,
    discovered: Vec<DiscoveredEdge>,
    /// label -> direct parents, asserted and discovered.
    parents: BTreeMap<String, BTreeSet<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification {
    /// Most specific first.
    pub superconcepts: Vec<String>,
    /// Most general first.
    pub subconcepts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualCategorization {
    pub type1_label: String,
    pub typicality: f64,
    pub type2_ancestors: Vec<String>,
}

impl Taxonomy {
    pub fn new(
        space: &ConceptualSpace,
        concepts: Vec<Concept>,
        asserted: Vec<(String, String)>,
    ) -> Result<Self> {
        Self::with_config(space, concepts, asserted, SubsumptionConfig::default())
    }

    /// Builds the taxonomy and adds every strict containment between its
    /// concepts that neither duplicates an existing path nor closes a
    /// cycle. Candidates are tried in lexical `(child, parent)` order.
    pub fn with_config(
        space: &ConceptualSpace,
        concepts: Vec<Concept>,
        asserted: Vec<(String, String)>,
        config: SubsumptionConfig,
    ) -> Result<Self> {
        let mut by_label = BTreeMap::new();
        for c in concepts {
            if c.region().space_id() != space.id() {
                return Err(Error::SpaceMismatch);
            }
            let label = c.label().to_string();
            if by_label.insert(label.clone(), c).is_some() {
                return Err(Error::InvalidTaxonomy(format!("concept `{label}` defined twice")));
            }
        }
        let mut parents: BTreeMap<String, BTreeSet<String>> =
            by_label.keys().map(|k| (k.clone(), BTreeSet::new())).collect();
        for (child, parent) in &asserted {
            for label in [child, parent] {
                if !by_label.contains_key(label) {
                    return Err(Error::UnknownLabel(label.clone()));
                }
            }
            if child == parent {
                return Err(Error::InvalidTaxonomy(format!("`{child}` asserted as its own parent")));
            }
            if reaches(&parents, parent, child) {
                return Err(Error::InvalidTaxonomy(format!(
                    "`{child} isa {parent}` closes a cycle"
                )));
            }
            parents.get_mut(child).expect("checked").insert(parent.clone());
        }

        let labels: Vec<&String> = by_label.keys().collect();
        let mut contains = BTreeMap::new();
        for &a in &labels {
            for &b in &labels {
                if a != b {
                    let s = subsumes(space, &by_label[a], &by_label[b], config.n_samples, config.seed)?;
                    contains.insert((a.clone(), b.clone()), s);
                }
            }
        }
        let mut discovered = Vec::new();
        for &child in &labels {
            for &parent in &labels {
                if child == parent {
                    continue;
                }
                let up = contains[&(parent.clone(), child.clone())];
                let down = contains[&(child.clone(), parent.clone())];
                if !up.holds || down.holds {
                    continue;
                }
                if reaches(&parents, child, parent) || reaches(&parents, parent, child) {
                    continue;
                }
                parents.get_mut(child).expect("known").insert(parent.clone());
                discovered.push(DiscoveredEdge {
                    child: child.clone(),
                    parent: parent.clone(),
                    exact: up.exact && down.exact,
                });
            }
        }
        Ok(Taxonomy {
            space: space.id(),
            concepts: by_label,
            asserted,
            discovered,
            parents,
        })
    }

    pub fn concept(&self, label: &str) -> Option<&Concept> {
        self.concepts.get(label)
    }

    pub fn concepts(&self) -> impl Iterator<Item = &Concept> {
        self.concepts.values()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.concepts.keys().map(String::as_str)
    }

    pub fn asserted(&self) -> &[(String, String)] {
        &self.asserted
    }

    pub fn discovered(&self) -> &[DiscoveredEdge] {
        &self.discovered
    }

    /// Nearest-prototype tessellation over every concept prototype.
    pub fn tessellation(&self, space: &ConceptualSpace) -> Result<Tessellation> {
        Tessellation::new(
            space,
            self.concepts
                .iter()
                .map(|(l, c)| (l.clone(), c.prototype().clone()))
                .collect(),
        )
    }

    fn children_map(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        let mut out: BTreeMap<&str, BTreeSet<&str>> =
            self.concepts.keys().map(|k| (k.as_str(), BTreeSet::new())).collect();
        for (child, ps) in &self.parents {
            for p in ps {
                out.get_mut(p.as_str()).expect("known").insert(child.as_str());
            }
        }
        out
    }
}

/// Whether `to` is reachable from `from` along parent edges.
fn reaches(parents: &BTreeMap<String, BTreeSet<String>>, from: &str, to: &str) -> bool {
    let mut stack = vec![from];
    let mut seen = BTreeSet::new();
    while let Some(node) = stack.pop() {
        if node == to {
            return true;
        }
        if seen.insert(node) {
            stack.extend(parents[node].iter().map(String::as_str));
        }
    }
    false
}

fn closure<'a>(edges: &BTreeMap<&'a str, BTreeSet<&'a str>>, start: &'a str) -> BTreeSet<&'a str> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<&str> = edges[start].iter().copied().collect();
    while let Some(node) = stack.pop() {
        if out.insert(node) {
            stack.extend(edges[node].iter().copied());
        }
    }
    out
}

/// Kahn order of `set` along `edges` (source before target), lexical among
/// ready nodes.
fn topo_order(edges: &BTreeMap<&str, BTreeSet<&str>>, set: &BTreeSet<&str>) -> Vec<String> {
    let mut indegree: BTreeMap<&str, usize> = set.iter().map(|&n| (n, 0)).collect();
    for &n in set {
        for t in &edges[n] {
            if let Some(d) = indegree.get_mut(t) {
                *d += 1;
            }
        }
    }
    let mut ready: BTreeSet<&str> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&n, _)| n).collect();
    let mut out = Vec::with_capacity(set.len());
    while let Some(n) = ready.pop_first() {
        out.push(n.to_string());
        for t in &edges[n] {
            if let Some(d) = indegree.get_mut(t) {
                *d -= 1;
                if *d == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    out
}

/// Every superconcept and subconcept of `label`, asserted or discovered.
pub fn classify_taxonomy(tax: &Taxonomy, label: &str) -> Result<Classification> {
    if !tax.concepts.contains_key(label) {
        return Err(Error::UnknownLabel(label.to_string()));
    }
    let up: BTreeMap<&str, BTreeSet<&str>> = tax
        .parents
        .iter()
        .map(|(k, v)| (k.as_str(), v.iter().map(String::as_str).collect()))
        .collect();
    let down = tax.children_map();
    let key = tax.concepts.keys().find(|k| *k == label).expect("present").as_str();
    Ok(Classification {
        superconcepts: topo_order(&up, &closure(&up, key)),
        subconcepts: topo_order(&down, &closure(&down, key)),
    })
}

/// Type-1 nearest-prototype categorization followed by a type-2 lookup
/// of the winning concept's superconcepts.
pub fn dual_categorize(
    space: &ConceptualSpace,
    tax: &Taxonomy,
    tess: &Tessellation,
    observation: &Point,
) -> Result<DualCategorization> {
    if tax.space != space.id() {
        return Err(Error::SpaceMismatch);
    }
    if let Some(missing) = tess.labels().find(|l| !tax.concepts.contains_key(*l)) {
        return Err(Error::InvalidTaxonomy(format!(
            "tessellation label `{missing}` is not a taxonomy concept"
        )));
    }
    let label = tess.categorize(space, observation)?.to_string();
    let concept = &tax.concepts[&label];
    Ok(DualCategorization {
        typicality: concept.typicality(space, observation)?,
        type2_ancestors: classify_taxonomy(tax, &label)?.superconcepts,
        type1_label: label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Dimension, Domain};

    fn plane() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "p",
            vec![Dimension::linear("x", -10.0, 10.0), Dimension::linear("y", -10.0, 10.0)],
        )])
        .unwrap()
    }

    fn boxed(s: &ConceptualSpace, label: &str, lo: f64, hi: f64) -> Concept {
        Concept::new(s, label, Region::boxed(s, vec![(lo, hi), (lo, hi)]).unwrap(), 1).unwrap()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn box_containment() {
        let s = plane();
        let outer = boxed(&s, "outer", 0.0, 3.0);
        let inner = boxed(&s, "inner", 1.0, 2.0);
        assert_eq!(subsumes(&s, &outer, &inner, 100, 0).unwrap(), exact(true));
        assert_eq!(subsumes(&s, &inner, &outer, 100, 0).unwrap(), exact(false));
        let shifted = boxed(&s, "shifted", 2.0, 4.0);
        assert!(!subsumes(&s, &outer, &shifted, 100, 0).unwrap().holds);
        assert!(subsumes(&s, &outer, &outer, 100, 0).unwrap().holds);
    }

    #[test]
    fn circular_arc_containment() {
        let s = ConceptualSpace::new(vec![Domain::new("c", vec![Dimension::circular("hue", 360.0)])]).unwrap();
        let c = |l: &str, lo, hi| Concept::new(&s, l, Region::boxed(&s, vec![(lo, hi)]).unwrap(), 1).unwrap();
        let wide = c("wide", 300.0, 60.0);
        assert!(subsumes(&s, &wide, &c("a", 350.0, 10.0), 10, 0).unwrap().holds);
        assert!(subsumes(&s, &wide, &c("b", 0.0, 50.0), 10, 0).unwrap().holds);
        assert!(!subsumes(&s, &wide, &c("d", 50.0, 70.0), 10, 0).unwrap().holds);
    }

    #[test]
    fn hull_and_halfspace_paths_are_exact() {
        let s = plane();
        let tri = Region::hull(
            &s,
            vec![s.point([0.0, 0.0]).unwrap(), s.point([4.0, 0.0]).unwrap(), s.point([0.0, 4.0]).unwrap()],
        )
        .unwrap();
        let tri = Concept::new(&s, "tri", tri, 1).unwrap();
        let big = boxed(&s, "big", -1.0, 5.0);
        assert_eq!(subsumes(&s, &big, &tri, 100, 0).unwrap(), exact(true));
        assert_eq!(subsumes(&s, &tri, &big, 100, 0).unwrap(), exact(false));
        let small = boxed(&s, "small", 0.5, 1.5);
        assert_eq!(subsumes(&s, &tri, &small, 100, 0).unwrap(), exact(true));
    }

    #[test]
    fn ball_in_box_is_sampled() {
        let s = plane();
        let ball = Concept::new(&s, "ball", Region::ball(&s, s.point([0.0, 0.0]).unwrap(), 1.0).unwrap(), 1).unwrap();
        let b = boxed(&s, "b", -2.0, 2.0);
        let r = subsumes(&s, &b, &ball, 10_000, 7).unwrap();
        assert!(r.holds && !r.exact);
        // box corners reach beyond the ball
        assert_eq!(subsumes(&s, &ball, &b, 100, 7).unwrap(), exact(false));
    }

    #[test]
    fn asserted_chain() {
        let s = plane();
        let cs = vec![boxed(&s, "a", 0.0, 1.0), boxed(&s, "b", 3.0, 4.0), boxed(&s, "c", 6.0, 7.0)];
        let tax = Taxonomy::new(&s, cs, vec![pair("a", "b"), pair("b", "c")]).unwrap();
        let a = classify_taxonomy(&tax, "a").unwrap();
        assert_eq!(a.superconcepts, vec!["b", "c"]);
        assert!(a.subconcepts.is_empty());
        let c = classify_taxonomy(&tax, "c").unwrap();
        assert!(c.superconcepts.is_empty());
        assert_eq!(c.subconcepts, vec!["b", "a"]);
        assert!(tax.discovered().is_empty());
        assert!(classify_taxonomy(&tax, "zz").is_err());
    }

    #[test]
    fn geometric_nesting_is_discovered() {
        let s = plane();
        let cs = vec![boxed(&s, "inner", 1.0, 2.0), boxed(&s, "outer", 0.0, 3.0), boxed(&s, "other", 5.0, 6.0)];
        let tax = Taxonomy::new(&s, cs, vec![]).unwrap();
        assert_eq!(classify_taxonomy(&tax, "inner").unwrap().superconcepts, vec!["outer"]);
        assert_eq!(classify_taxonomy(&tax, "outer").unwrap().subconcepts, vec!["inner"]);
        assert_eq!(
            tax.discovered(),
            &[DiscoveredEdge { child: "inner".into(), parent: "outer".into(), exact: true }]
        );
    }

    #[test]
    fn discovery_never_reverses_assertions() {
        let s = plane();
        // asserted against the geometry: outer isa inner
        let cs = vec![boxed(&s, "inner", 1.0, 2.0), boxed(&s, "outer", 0.0, 3.0)];
        let tax = Taxonomy::new(&s, cs, vec![pair("outer", "inner")]).unwrap();
        assert!(tax.discovered().is_empty());
        assert_eq!(classify_taxonomy(&tax, "outer").unwrap().superconcepts, vec!["inner"]);
    }

    #[test]
    fn invalid_taxonomies() {
        let s = plane();
        let cs = || vec![boxed(&s, "a", 0.0, 1.0), boxed(&s, "b", 3.0, 4.0)];
        assert!(Taxonomy::new(&s, cs(), vec![pair("a", "b"), pair("b", "a")]).is_err());
        assert!(Taxonomy::new(&s, cs(), vec![pair("a", "a")]).is_err());
        assert!(Taxonomy::new(&s, cs(), vec![pair("a", "nope")]).is_err());
        let mut dup = cs();
        dup.push(boxed(&s, "a", 5.0, 6.0));
        assert!(Taxonomy::new(&s, dup, vec![]).is_err());
    }

    #[test]
    fn dual_pipeline() {
        let s = plane();
        let cs = vec![
            boxed(&s, "animal", -9.0, 9.0),
            boxed(&s, "mammal", -5.0, 5.0),
            boxed(&s, "dog", 1.0, 3.0),
            boxed(&s, "fish", -8.0, -6.0),
        ];
        let tax = Taxonomy::new(&s, cs, vec![pair("dog", "mammal"), pair("mammal", "animal")]).unwrap();
        let tess = Tessellation::new(
            &s,
            ["dog", "fish"]
                .iter()
                .map(|l| (l.to_string(), tax.concept(l).unwrap().prototype().clone()))
                .collect(),
        )
        .unwrap();
        let at = dual_categorize(&s, &tax, &tess, &s.point([2.0, 2.0]).unwrap()).unwrap();
        assert_eq!(at.type1_label, "dog");
        assert_eq!(at.typicality, 1.0);
        assert_eq!(at.type2_ancestors, vec!["mammal", "animal"]);
        // fish sits inside animal geometrically
        let f = dual_categorize(&s, &tax, &tess, &s.point([-7.5, -6.0]).unwrap()).unwrap();
        assert_eq!(f.type1_label, "fish");
        assert_eq!(f.type2_ancestors, vec!["animal"]);

        let stray = Tessellation::new(&s, vec![("cat".into(), s.point([0.0, 0.0]).unwrap())]).unwrap();
        assert!(dual_categorize(&s, &tax, &stray, &s.point([0.0, 0.0]).unwrap()).is_err());
    }
}

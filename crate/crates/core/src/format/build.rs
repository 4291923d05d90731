use super::{ConjunctionSpec, DimKindSpec, Loc, ParseError, Phase, RegionSpec, SpaceSpec};
use crate::error::{Error, Result};
use crate::fuzzy::{osherson_smith_witness, FuzzyAssertion, Valuation, WitnessReport};
use crate::dynamics::Trajectory;
use crate::rbf::{RbfNetwork, RbfUnit};
use crate::regions::{region_from_exemplars, Concept, Exemplar, Region};
use crate::space::{ConceptualSpace, Dimension, Domain, Point};
use crate::taxonomy::{SubsumptionConfig, Taxonomy};
use crate::tessellation::Tessellation;

/// Attaches a source position to a semantic error.
fn located(loc: Loc, context: &str, e: Error) -> Error {
    Error::Parse(ParseError {
        line: loc.line,
        column: loc.column,
        message: format!("{context}: {e}"),
    })
}

pub fn build_space(spec: &SpaceSpec) -> Result<ConceptualSpace> {
    let mut domains: Vec<Domain> = Vec::new();
    for d in &spec.dims {
        let mut dim = match d.kind {
            DimKindSpec::Linear { min, max } => Dimension::linear(d.name.clone(), min, max),
            DimKindSpec::Circular { period } => Dimension::circular(d.name.clone(), period),
        };
        if let Some(w) = d.weight {
            dim = dim.with_weight(w);
        }
        match domains.last_mut() {
            Some(last) if last.name == d.domain => last.dimensions.push(dim),
            _ => {
                let mut domain = Domain::new(d.domain.clone(), vec![dim]);
                if let Some(decl) = spec.domains.iter().find(|x| x.name == d.domain) {
                    if let Some(p) = decl.exponent {
                        domain = domain.with_exponent(p);
                    }
                    if let Some(w) = decl.weight {
                        domain = domain.with_weight(w);
                    }
                }
                domains.push(domain);
            }
        }
    }
    let q = spec.inter_exponent.as_ref().map_or(1.0, |s| s.value);
    ConceptualSpace::with_inter_exponent(domains, q)
}

fn point(space: &ConceptualSpace, loc: Loc, context: &str, coords: &[f64]) -> Result<Point> {
    space.point(coords.to_vec()).map_err(|e| located(loc, context, e))
}

/// Every `concept` line in order. A `prototype` line with the same label
/// replaces the centroid; `sigma` replaces the sampled spread.
pub fn build_concepts(spec: &SpaceSpec, space: &ConceptualSpace, seed: u64) -> Result<Vec<Concept>> {
    spec.concepts
        .iter()
        .map(|c| {
            let ctx = format!("concept `{}`", c.label);
            let at = |e| located(c.loc, &ctx, e);
            let region = match &c.region {
                RegionSpec::Box(iv) => Region::boxed(space, iv.clone()),
                RegionSpec::Hull(points) => points
                    .iter()
                    .map(|p| space.point(p.clone()))
                    .collect::<Result<Vec<_>>>()
                    .and_then(|g| Region::hull(space, g)),
                RegionSpec::Ball { center, radius } => {
                    space.point(center.clone()).and_then(|p| Region::ball(space, p, *radius))
                }
                RegionSpec::Exemplars => spec
                    .exemplars
                    .iter()
                    .filter(|e| e.label == c.label)
                    .map(|e| space.point(e.coords.clone()))
                    .collect::<Result<Vec<_>>>()
                    .and_then(|pts| region_from_exemplars(space, &pts)),
            }
            .map_err(at)?;
            let prototype = spec.prototypes.iter().find(|p| p.label == c.label);
            let concept = match (prototype, c.sigma) {
                (Some(p), sigma) => {
                    let proto = point(space, p.loc, &format!("prototype `{}`", p.label), &p.coords)?;
                    match sigma {
                        Some(s) => Concept::from_parts(space, c.label.clone(), region, proto, s),
                        None => Concept::with_prototype(space, c.label.clone(), region, proto, seed),
                    }
                }
                (None, Some(s)) => Concept::with_sigma(space, c.label.clone(), region, s, seed),
                (None, None) => Concept::new(space, c.label.clone(), region, seed),
            };
            concept.map_err(at)
        })
        .collect()
}

/// From `prototype` lines when there are any, else from concept prototypes.
pub fn build_tessellation(spec: &SpaceSpec, space: &ConceptualSpace, concepts: &[Concept]) -> Result<Tessellation> {
    let prototypes = if spec.prototypes.is_empty() {
        concepts
            .iter()
            .map(|c| (c.label().to_string(), c.prototype().clone()))
            .collect()
    } else {
        spec.prototypes
            .iter()
            .map(|p| Ok((p.label.clone(), point(space, p.loc, &format!("prototype `{}`", p.label), &p.coords)?)))
            .collect::<Result<Vec<_>>>()?
    };
    if prototypes.is_empty() {
        return Err(Error::InvalidArgument("file defines no prototypes or concepts".into()));
    }
    Tessellation::new(space, prototypes)
}

pub fn build_exemplars(spec: &SpaceSpec, space: &ConceptualSpace) -> Result<Vec<Exemplar>> {
    spec.exemplars
        .iter()
        .map(|e| Ok(Exemplar::new(e.label.clone(), point(space, e.loc, "exemplar", &e.coords)?)))
        .collect()
}

/// The `rbf` units, or `None` when the file has none.
pub fn build_network(spec: &SpaceSpec, space: &ConceptualSpace) -> Result<Option<RbfNetwork>> {
    if spec.rbf_units.is_empty() {
        return Ok(None);
    }
    let units = spec
        .rbf_units
        .iter()
        .map(|u| {
            Ok(RbfUnit {
                center: point(space, u.loc, &format!("rbf `{}`", u.label), &u.center)?,
                width: u.width,
                label: u.label.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RbfNetwork::from_units(space, units).map(Some)
}

pub fn build_taxonomy(
    spec: &SpaceSpec,
    space: &ConceptualSpace,
    concepts: Vec<Concept>,
    config: SubsumptionConfig,
) -> Result<Taxonomy> {
    let edges = spec.isa.iter().map(|e| (e.child.clone(), e.parent.clone())).collect();
    Taxonomy::with_config(space, concepts, edges, config)
}

/// `(pre-gap, post-gap)` trajectories in order of first appearance.
pub fn build_tracks(spec: &SpaceSpec, space: &ConceptualSpace) -> Result<(Vec<Trajectory>, Vec<Trajectory>)> {
    let mut pre: Vec<Trajectory> = Vec::new();
    let mut post: Vec<Trajectory> = Vec::new();
    for t in &spec.tracks {
        let p = point(space, t.loc, &format!("track `{}`", t.object_id), &t.coords)?;
        let list = match t.phase {
            Phase::Pre => &mut pre,
            Phase::Post => &mut post,
        };
        let at = |e| located(t.loc, &format!("track `{}`", t.object_id), e);
        match list.iter_mut().find(|x| x.object_id() == t.object_id) {
            Some(traj) => traj.push(space, t.t, p).map_err(at)?,
            None => list.push(Trajectory::new(space, t.object_id.clone(), vec![(t.t, p)]).map_err(at)?),
        }
    }
    Ok((pre, post))
}

/// Graded facts and the conjunctions asserted over them.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyProblem {
    pub assertions: Vec<FuzzyAssertion>,
    pub conjunctions: Vec<ConjunctionSpec>,
}

impl FuzzyProblem {
    pub fn valuation(&self) -> Valuation {
        Valuation::new(&self.assertions)
    }

    /// One report per individual with an asserted value for a declared
    /// conjunction, in declaration order.
    pub fn witnesses(&self) -> Result<Vec<(FuzzyAssertion, WitnessReport)>> {
        let mut out = Vec::new();
        for conj in &self.conjunctions {
            for asserted in self.assertions.iter().filter(|a| a.predicate == conj.predicate) {
                let parts = conj
                    .conjuncts
                    .iter()
                    .map(|p| {
                        self.assertions
                            .iter()
                            .find(|a| &a.predicate == p && a.individual == asserted.individual)
                            .cloned()
                            .ok_or_else(|| Error::UnassignedAtom {
                                predicate: p.clone(),
                                individual: asserted.individual.clone(),
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push((asserted.clone(), osherson_smith_witness(asserted, &parts)));
            }
        }
        Ok(out)
    }
}

pub fn build_fuzzy(spec: &SpaceSpec) -> Result<FuzzyProblem> {
    Ok(FuzzyProblem {
        assertions: spec
            .fuzzy
            .iter()
            .map(|f| FuzzyAssertion::new(f.predicate.clone(), f.individual.clone(), f.truth))
            .collect::<Result<_>>()?,
        conjunctions: spec.conjunctions.iter().map(|c| c.value.clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse_cspace;
    use super::*;

    #[test]
    fn space_and_concepts() {
        let spec = parse_cspace(
            "space inter 2\ndomain c p 1\ndim c.h circular 360\ndim s.x linear 0 10\ndim s.y linear 0 10 weight 2\n\
             concept a box 0..10 0..2 0..2\nprototype a 5,1,1\n",
        )
        .unwrap();
        let space = build_space(&spec).unwrap();
        assert_eq!(space.domains().len(), 2);
        assert_eq!(space.domains()[0].exponent, 1.0);
        assert_eq!(space.inter_exponent(), 2.0);
        let cs = build_concepts(&spec, &space, 1).unwrap();
        assert_eq!(cs[0].prototype().coords(), &[5.0, 1.0, 1.0]);
        let tess = build_tessellation(&spec, &space, &cs).unwrap();
        assert_eq!(tess.prototypes().len(), 1);
    }

    #[test]
    fn build_errors_are_located() {
        let spec = parse_cspace("dim a.x linear 0 1\nconcept a box 0..1\nprototype a 0.5\nconcept b ball 5 1\n").unwrap();
        let space = build_space(&spec).unwrap();
        match build_concepts(&spec, &space, 1) {
            Err(Error::Parse(e)) => assert_eq!(e.line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tracks_and_fuzzy() {
        let spec = parse_cspace(
            "dim a.x linear 0 10\ntrack pre o 0 1\ntrack pre o 1 2\ntrack post p 3 4\n\
             fuzzy z pina 0.2\nfuzzy d pina 0.95\nfuzzy dz pina 0.97\nconjunction dz d z\n",
        )
        .unwrap();
        let space = build_space(&spec).unwrap();
        let (pre, post) = build_tracks(&spec, &space).unwrap();
        assert_eq!((pre.len(), pre[0].len(), post.len()), (1, 2, 1));
        let w = build_fuzzy(&spec).unwrap().witnesses().unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0].1.violated);
        assert_eq!(w[0].1.bound, 0.2);
    }
}

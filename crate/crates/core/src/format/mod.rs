//! The `.cspace` text format, CSV ingestion and SVG output.
//!
//! A `.cspace` file is line oriented: one definition per line, `#` starts a
//! comment, blank lines are ignored. [`parse_cspace`] yields a
//! [`SpaceSpec`] whose elements remember where they were written;
//! [`serialize`] writes one back in canonical section order. The
//! `build_*` functions turn a spec into library values.

mod build;
mod ingest;
mod parse;
mod svg;
mod write;

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

pub use build::{
    build_concepts, build_exemplars, build_fuzzy, build_network, build_space, build_taxonomy,
    build_tessellation, build_tracks, FuzzyProblem,
};
pub use ingest::{read_exemplars_csv, read_trajectories_csv};
pub use parse::parse_cspace;
pub use svg::{emit_svg, region_outline, SvgItem, SvgScene};
pub use write::serialize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A value with the position it was parsed from. Equality ignores the
/// position.
#[derive(Debug, Clone)]
pub struct Spanned<T> {
    pub value: T,
    pub loc: Loc,
}

impl<T> Spanned<T> {
    pub fn new(value: T, loc: Loc) -> Self {
        Spanned { value, loc }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T> Deref for Spanned<T> {
    type Target = T;

    fn deref(&self) -> &T {
        &self.value
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub name: String,
    pub exponent: Option<f64>,
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DimKindSpec {
    Linear { min: f64, max: f64 },
    Circular { period: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimSpec {
    pub domain: String,
    pub name: String,
    pub kind: DimKindSpec,
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegionSpec {
    Box(Vec<(f64, f64)>),
    Hull(Vec<Vec<f64>>),
    Ball { center: Vec<f64>, radius: f64 },
    /// Hull of the `exemplar` lines carrying the concept's label.
    Exemplars,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConceptSpec {
    pub label: String,
    pub region: RegionSpec,
    pub sigma: Option<f64>,
}

/// `prototype` and `exemplar` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub label: String,
    pub coords: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RbfSpec {
    pub label: String,
    pub center: Vec<f64>,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsaSpec {
    pub child: String,
    pub parent: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Pre,
    Post,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Pre => "pre",
            Phase::Post => "post",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrackSpec {
    pub phase: Phase,
    pub object_id: String,
    pub t: f64,
    pub coords: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySpec {
    pub predicate: String,
    pub individual: String,
    pub truth: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctionSpec {
    pub predicate: String,
    pub conjuncts: Vec<String>,
}

/// Parsed contents of a `.cspace` file, grouped by line kind in source
/// order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpaceSpec {
    pub inter_exponent: Option<Spanned<f64>>,
    pub domains: Vec<Spanned<DomainSpec>>,
    pub dims: Vec<Spanned<DimSpec>>,
    pub concepts: Vec<Spanned<ConceptSpec>>,
    pub prototypes: Vec<Spanned<LabeledPoint>>,
    pub exemplars: Vec<Spanned<LabeledPoint>>,
    pub rbf_units: Vec<Spanned<RbfSpec>>,
    pub isa: Vec<Spanned<IsaSpec>>,
    pub tracks: Vec<Spanned<TrackSpec>>,
    pub fuzzy: Vec<Spanned<FuzzySpec>>,
    pub conjunctions: Vec<Spanned<ConjunctionSpec>>,
}

impl SpaceSpec {
    pub fn concept(&self, label: &str) -> Option<&Spanned<ConceptSpec>> {
        self.concepts.iter().find(|c| c.label == label)
    }
}

//! Conceptual spaces: concepts as regions of metric spaces built from
//! quality dimensions.
//!
//! [`space`] defines dimensions, domains and distance. [`regions`] holds
//! concepts, prototypes, typicality and combination. [`tessellation`]
//! categorizes by nearest prototype. [`fuzzy`], [`rbf`], [`dynamics`] and
//! [`taxonomy`] connect the geometry to fuzzy logic, RBF classifiers,
//! object tracking and concept hierarchies. [`format`] and [`cli`] read and
//! write `.cspace` files.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod fuzzy;
pub mod hull;
mod lp;
pub mod regions;
pub mod rbf;
pub mod space;
pub mod taxonomy;
pub mod tessellation;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/space.md")]
    mod space {}
    #[doc = include_str!("../../../book/src/regions.md")]
    mod regions {}
    #[doc = include_str!("../../../book/src/tessellation.md")]
    mod tessellation {}
    #[doc = include_str!("../../../book/src/fuzzy.md")]
    mod fuzzy {}
    #[doc = include_str!("../../../book/src/rbf.md")]
    mod rbf {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/taxonomy.md")]
    mod taxonomy {}
    #[doc = include_str!("../../../book/src/format.md")]
    mod format {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Objects as trajectories through a conceptual space, and the round-table
//! reading of "to the right of".
//!
//! An object's identity over time is a time-indexed path. Extrapolating
//! that path across an occlusion and comparing it with what reappears is
//! enough to re-identify objects ([`reidentify`]). [`SeatingFrame`] shows
//! how the same spatial relation can be transitive in one frame and not in
//! another.

mod assignment;
mod seating;
mod trajectory;

pub use assignment::{reidentify, Match, Reidentification, EXHAUSTIVE_LIMIT};
pub use seating::{right_of, transitivity_check, SeatingFrame, TransitivityReport};
pub use trajectory::{Extrapolation, Trajectory};

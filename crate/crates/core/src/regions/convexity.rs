use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{sample_members, Membership};
use crate::error::{Error, Result};
use crate::space::{ConceptualSpace, Point};

const BETWEEN_TOL: f64 = 1e-9;

/// Metric betweenness: `d(a, x) + d(x, b) <= d(a, b) + 1e-9`.
///
/// Only defined for Euclidean intra-domain metrics.
pub fn between(space: &ConceptualSpace, a: &Point, x: &Point, b: &Point) -> Result<bool> {
    if !space.is_euclidean() {
        return Err(Error::UnsupportedMetric(
            "betweenness requires Euclidean (p = 2) domains".into(),
        ));
    }
    let ax = space.distance(a, x)?;
    let xb = space.distance(x, b)?;
    let ab = space.distance(a, b)?;
    Ok(ax + xb <= ab + BETWEEN_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvexityReport {
    /// Member pairs drawn.
    pub pairs: usize,
    /// Membership tests performed (midpoint and one random mixture per pair).
    pub tests: usize,
    /// Tests whose combined point fell outside the region.
    pub violations: usize,
}

/// Samples `n_samples` pairs of member points and checks that their
/// midpoint and a random convex combination stay inside the region.
pub fn check_criterion_p<M: Membership + ?Sized>(
    space: &ConceptualSpace,
    region: &M,
    n_samples: usize,
    seed: u64,
) -> Result<ConvexityReport> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = sample_members(space, region, 2 * n_samples, &mut rng)?;
    let mut violations = 0;
    for pair in members.chunks_exact(2) {
        let t = rng.random::<f64>();
        for w in [0.5, t] {
            let mixed = space.lerp_coords(&pair[0], &pair[1], w);
            if !region.contains_coords(space, &mixed) {
                violations += 1;
            }
        }
    }
    Ok(ConvexityReport {
        pairs: n_samples,
        tests: 2 * n_samples,
        violations,
    })
}

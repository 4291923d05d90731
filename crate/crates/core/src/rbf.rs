//! Radial basis function networks read as prototype systems.
//!
//! Each Gaussian unit is a prototype: its center is a point of the space
//! and its activation `exp(-d(x, c)^2 / (2 w^2))` is a similarity to that
//! point. Training is per-class k-means, so every unit can be traced back
//! to the exemplars it summarizes.

use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::regions::{Concept, Exemplar, Region};
use crate::space::{ConceptualSpace, Point, SpaceId};
use crate::tessellation::Tessellation;

pub const MAX_KMEANS_ITERATIONS: usize = 100;
pub const MIN_WIDTH: f64 = 1e-6;
pub const DEFAULT_CHIMERA_THRESHOLD: f64 = 0.95;

#[derive(Debug, Clone, PartialEq)]
pub struct RbfUnit {
    pub center: Point,
    pub width: f64,
    pub label: String,
}

/// How unit widths are derived from the trained centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WidthRule {
    /// Half the distance to the nearest other center.
    #[default]
    NearestCenter,
    /// Every unit gets the mean of the nearest-center widths.
    Shared,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub k_per_class: usize,
    pub seed: u64,
    pub width_rule: WidthRule,
}

impl TrainConfig {
    pub fn new(k_per_class: usize, seed: u64) -> Self {
        TrainConfig {
            k_per_class,
            seed,
            width_rule: WidthRule::NearestCenter,
        }
    }

    pub fn with_width_rule(mut self, rule: WidthRule) -> Self {
        self.width_rule = rule;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RbfNetwork {
    units: Vec<RbfUnit>,
    space: SpaceId,
    /// `(k_per_class, seed)` when the network came out of training.
    training: Option<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub label: String,
    /// Activation of the winning unit.
    pub confidence: f64,
    pub unit: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChimeraReport {
    pub ambiguous: bool,
    /// Sorted labels whose best activation reaches `threshold` times the top one.
    pub top_labels: Vec<String>,
    /// Best activation of any other label divided by the top activation.
    pub ratio: f64,
}

/// The network read back as a conceptual space.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpretation {
    /// One prototype per unit, labelled by unit id.
    pub tessellation: Tessellation,
    /// One concept per unit: a ball at the half-activation contour with
    /// typicality scale equal to the unit width.
    pub concepts: Vec<Concept>,
    /// Class label of each unit, aligned with the tessellation prototypes.
    pub classes: Vec<String>,
}

impl Interpretation {
    /// Class of the tessellation prototype called `unit_id`.
    pub fn class_of(&self, unit_id: &str) -> Option<&str> {
        self.tessellation
            .labels()
            .position(|l| l == unit_id)
            .map(|i| self.classes[i].as_str())
    }
}

pub fn train_rbf(
    space: &ConceptualSpace,
    exemplars: &[Exemplar],
    k_per_class: usize,
    seed: u64,
) -> Result<RbfNetwork> {
    train_rbf_with(space, exemplars, TrainConfig::new(k_per_class, seed))
}

pub fn train_rbf_with(
    space: &ConceptualSpace,
    exemplars: &[Exemplar],
    config: TrainConfig,
) -> Result<RbfNetwork> {
    let k = config.k_per_class;
    if k == 0 {
        return Err(Error::InvalidTraining("k_per_class must be at least 1".into()));
    }
    if exemplars.is_empty() {
        return Err(Error::InvalidTraining("no exemplars".into()));
    }
    // classes in order of first appearance
    let mut classes: Vec<(&str, Vec<&[f64]>)> = Vec::new();
    for e in exemplars {
        space.check(&e.point)?;
        match classes.iter_mut().find(|(l, _)| *l == e.label) {
            Some((_, pts)) => pts.push(e.point.coords()),
            None => classes.push((&e.label, vec![e.point.coords()])),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut centers: Vec<(String, Vec<f64>, f64)> = Vec::new();
    for (label, points) in &classes {
        if points.len() < k {
            return Err(Error::InvalidTraining(format!(
                "class `{label}` has {} exemplars, fewer than k = {k}",
                points.len()
            )));
        }
        for (center, spread) in kmeans(space, points, k, &mut rng) {
            centers.push((label.to_string(), center, spread));
        }
    }

    let mut widths: Vec<f64> = centers
        .iter()
        .enumerate()
        .map(|(i, (_, c, spread))| {
            let nearest = centers
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (_, o, _))| space.coord_distance(c, o))
                .fold(f64::INFINITY, f64::min);
            if nearest.is_finite() {
                (0.5 * nearest).max(MIN_WIDTH)
            } else {
                spread.max(MIN_WIDTH)
            }
        })
        .collect();
    if config.width_rule == WidthRule::Shared {
        let mean = widths.iter().sum::<f64>() / widths.len() as f64;
        widths.iter_mut().for_each(|w| *w = mean);
    }
    let units = centers
        .into_iter()
        .zip(widths)
        .map(|((label, c, _), width)| RbfUnit {
            center: space.point_unchecked(c),
            width,
            label,
        })
        .collect();
    Ok(RbfNetwork {
        units,
        space: space.id(),
        training: Some((k, config.seed)),
    })
}

/// Lloyd iterations from `k` distinct random exemplars. An emptied cluster
/// restarts at the point farthest from its assigned center. Returns each
/// center with the RMS distance of its members.
fn kmeans(
    space: &ConceptualSpace,
    points: &[&[f64]],
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(Vec<f64>, f64)> {
    let mut centers: Vec<Vec<f64>> = sample(rng, points.len(), k)
        .into_iter()
        .map(|i| points[i].to_vec())
        .collect();
    let nearest = |centers: &[Vec<f64>], p: &[f64]| {
        let mut best = (0, f64::INFINITY);
        for (j, c) in centers.iter().enumerate() {
            let d = space.coord_distance(p, c);
            if d < best.1 {
                best = (j, d);
            }
        }
        best
    };
    let mut assignment: Vec<usize> = vec![usize::MAX; points.len()];
    for _ in 0..MAX_KMEANS_ITERATIONS {
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let (j, _) = nearest(&centers, p);
            if assignment[i] != j {
                assignment[i] = j;
                changed = true;
            }
        }
        for j in 0..k {
            if !assignment.contains(&j) {
                let far = (0..points.len())
                    .map(|i| (i, space.coord_distance(points[i], &centers[assignment[i]])))
                    .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
                    .0;
                assignment[far] = j;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        for (j, center) in centers.iter_mut().enumerate() {
            let members: Vec<&[f64]> = points
                .iter()
                .zip(&assignment)
                .filter(|(_, &a)| a == j)
                .map(|(p, _)| *p)
                .collect();
            if !members.is_empty() {
                *center = space.mean_coords(&members);
            }
        }
    }
    centers
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let (sum, n) = points
                .iter()
                .zip(&assignment)
                .filter(|(_, &a)| a == j)
                .fold((0.0, 0usize), |(s, n), (p, _)| (s + space.coord_distance(p, c).powi(2), n + 1));
            (c.clone(), (sum / n.max(1) as f64).sqrt())
        })
        .collect()
}

impl RbfNetwork {
    pub fn from_units(space: &ConceptualSpace, units: Vec<RbfUnit>) -> Result<Self> {
        if units.is_empty() {
            return Err(Error::InvalidTraining("network needs at least one unit".into()));
        }
        for u in &units {
            space.check(&u.center)?;
            if !(u.width.is_finite() && u.width > 0.0) {
                return Err(Error::InvalidTraining(format!(
                    "unit `{}` has nonpositive width {}",
                    u.label, u.width
                )));
            }
        }
        Ok(RbfNetwork {
            units,
            space: space.id(),
            training: None,
        })
    }

    pub fn units(&self) -> &[RbfUnit] {
        &self.units
    }

    pub fn training(&self) -> Option<(usize, u64)> {
        self.training
    }

    fn check(&self, space: &ConceptualSpace, x: &Point) -> Result<()> {
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        space.check(x)
    }

    /// `-d^2 / (2 w^2)` per unit; ordering-safe far from every center.
    fn log_activations(&self, space: &ConceptualSpace, x: &Point) -> Vec<f64> {
        self.units
            .iter()
            .map(|u| {
                let d = space.coord_distance(x.coords(), u.center.coords());
                -(d * d) / (2.0 * u.width * u.width)
            })
            .collect()
    }

    pub fn activate(&self, space: &ConceptualSpace, x: &Point) -> Result<Vec<f64>> {
        self.check(space, x)?;
        Ok(self.log_activations(space, x).into_iter().map(f64::exp).collect())
    }

    /// Most active unit; ties go to the lowest unit index.
    pub fn classify(&self, space: &ConceptualSpace, x: &Point) -> Result<Classification> {
        self.check(space, x)?;
        let logs = self.log_activations(space, x);
        let mut best = 0;
        for (i, &v) in logs.iter().enumerate() {
            if v > logs[best] {
                best = i;
            }
        }
        Ok(Classification {
            label: self.units[best].label.clone(),
            confidence: logs[best].exp(),
            unit: best,
        })
    }

    /// Flags inputs whose best competing label is nearly as active as the
    /// winner: ambiguous iff that ratio reaches `threshold`.
    pub fn detect_chimera(&self, space: &ConceptualSpace, x: &Point, threshold: f64) -> Result<ChimeraReport> {
        self.check(space, x)?;
        if !(threshold > 0.0 && threshold <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "chimera threshold must lie in (0, 1], got {threshold}"
            )));
        }
        if self.units.len() < 2 {
            return Err(Error::InvalidArgument("chimera detection needs two or more units".into()));
        }
        let logs = self.log_activations(space, x);
        // best log-activation per label
        let mut per_label: Vec<(&str, f64)> = Vec::new();
        for (u, &v) in self.units.iter().zip(&logs) {
            match per_label.iter_mut().find(|(l, _)| *l == u.label) {
                Some((_, best)) => *best = best.max(v),
                None => per_label.push((&u.label, v)),
            }
        }
        let top = per_label.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
        let top_label = per_label
            .iter()
            .filter(|(_, v)| *v == top)
            .map(|(l, _)| *l)
            .min()
            .expect("at least one unit");
        let runner_up = per_label
            .iter()
            .filter(|(l, _)| *l != top_label)
            .map(|(_, v)| *v)
            .fold(f64::NEG_INFINITY, f64::max);
        let ratio = (runner_up - top).exp();
        let log_threshold = threshold.ln();
        let mut top_labels: Vec<String> = per_label
            .iter()
            .filter(|(_, v)| v - top >= log_threshold)
            .map(|(l, _)| l.to_string())
            .collect();
        top_labels.sort();
        Ok(ChimeraReport {
            ambiguous: runner_up - top >= log_threshold,
            top_labels,
            ratio,
        })
    }

    /// Tessellation over the unit centers plus one ball concept per unit.
    ///
    /// Units of a class with a single unit keep the class label; otherwise
    /// they are called `class#i` in unit order.
    pub fn to_conceptual_space(&self, space: &ConceptualSpace) -> Result<Interpretation> {
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        let ids = self.unit_ids();
        let tessellation = Tessellation::new(
            space,
            ids.iter().cloned().zip(self.units.iter().map(|u| u.center.clone())).collect(),
        )?;
        let half = (2.0 * std::f64::consts::LN_2).sqrt();
        let concepts = self
            .units
            .iter()
            .zip(&ids)
            .map(|(u, id)| {
                let region = Region::ball(space, u.center.clone(), u.width * half)?;
                Concept::from_parts(space, id.clone(), region, u.center.clone(), u.width)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Interpretation {
            tessellation,
            concepts,
            classes: self.units.iter().map(|u| u.label.clone()).collect(),
        })
    }

    pub fn unit_ids(&self) -> Vec<String> {
        let mut seen: Vec<(&str, usize)> = Vec::new();
        for u in &self.units {
            match seen.iter_mut().find(|(l, _)| *l == u.label) {
                Some((_, n)) => *n += 1,
                None => seen.push((&u.label, 1)),
            }
        }
        let mut counters: Vec<(&str, usize)> = Vec::new();
        self.units
            .iter()
            .map(|u| {
                let total = seen.iter().find(|(l, _)| *l == u.label).map_or(1, |(_, n)| *n);
                if total == 1 {
                    return u.label.clone();
                }
                let idx = match counters.iter_mut().find(|(l, _)| *l == u.label) {
                    Some((_, n)) => {
                        *n += 1;
                        *n - 1
                    }
                    None => {
                        counters.push((&u.label, 1));
                        0
                    }
                };
                format!("{}#{}", u.label, idx)
            })
            .collect()
    }
}

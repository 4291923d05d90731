use super::{Extrapolation, Trajectory};
use crate::error::{Error, Result};
use crate::space::ConceptualSpace;

/// Largest `max(pre, post)` solved by exhaustive search; larger problems
/// fall back to greedy row minima.
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Match {
    pub pre_id: String,
    pub post_id: String,
    /// Distance between the extrapolated pre-gap position and the first
    /// post-gap sample.
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reidentification {
    pub matches: Vec<Match>,
    pub unmatched_pre: Vec<String>,
    pub unmatched_post: Vec<String>,
    /// False when the greedy fallback was used.
    pub exhaustive: bool,
}

impl Reidentification {
    pub fn total_cost(&self) -> f64 {
        self.matches.iter().map(|m| m.cost).sum()
    }
}

/// Matches trajectories that ended before an occlusion to those that
/// started after it.
///
/// A pair costs the distance between where the pre-gap trajectory is
/// projected to be when the post-gap one starts, and where that one
/// actually starts. Pairs whose post-gap trajectory starts before the
/// pre-gap one ends cannot match. The assignment maximizes the number of
/// matches, then minimizes total cost.
pub fn reidentify(
    space: &ConceptualSpace,
    pre_gap: &[Trajectory],
    post_gap: &[Trajectory],
    mode: Extrapolation,
) -> Result<Reidentification> {
    if pre_gap.is_empty() || post_gap.is_empty() {
        return Err(Error::InvalidTrajectory(
            "re-identification needs trajectories on both sides of the gap".into(),
        ));
    }
    let mut costs = vec![vec![f64::INFINITY; post_gap.len()]; pre_gap.len()];
    for (i, pre) in pre_gap.iter().enumerate() {
        if pre.len() < 2 {
            return Err(Error::InvalidTrajectory(format!(
                "`{}` needs at least 2 samples",
                pre.object_id()
            )));
        }
        for (j, post) in post_gap.iter().enumerate() {
            let (t, first) = post.first().ok_or_else(|| {
                Error::InvalidTrajectory(format!("`{}` has no samples", post.object_id()))
            })?;
            if *t > pre.last().expect("nonempty").0 {
                let guess = pre.extrapolate(space, *t, mode)?;
                costs[i][j] = space.distance(&guess, first)?;
            }
        }
    }

    let exhaustive = pre_gap.len().max(post_gap.len()) <= EXHAUSTIVE_LIMIT;
    let pairing = if exhaustive {
        exhaustive_assignment(&costs)
    } else {
        greedy_assignment(&costs)
    };

    let mut used_post = vec![false; post_gap.len()];
    let mut matches = Vec::new();
    let mut unmatched_pre = Vec::new();
    for (i, slot) in pairing.iter().enumerate() {
        match slot {
            Some(j) => {
                used_post[*j] = true;
                matches.push(Match {
                    pre_id: pre_gap[i].object_id().to_string(),
                    post_id: post_gap[*j].object_id().to_string(),
                    cost: costs[i][*j],
                });
            }
            None => unmatched_pre.push(pre_gap[i].object_id().to_string()),
        }
    }
    let unmatched_post = post_gap
        .iter()
        .zip(&used_post)
        .filter(|(_, used)| !**used)
        .map(|(p, _)| p.object_id().to_string())
        .collect();
    Ok(Reidentification {
        matches,
        unmatched_pre,
        unmatched_post,
        exhaustive,
    })
}

/// Depth-first search over every partial injection from rows to columns,
/// skipping infinite entries. Ranks by match count, then total cost; the
/// first optimum found in row-major order wins.
fn exhaustive_assignment(costs: &[Vec<f64>]) -> Vec<Option<usize>> {
    struct Search<'a> {
        costs: &'a [Vec<f64>],
        current: Vec<Option<usize>>,
        used: Vec<bool>,
        best: Vec<Option<usize>>,
        best_key: (usize, f64),
    }

    impl Search<'_> {
        fn visit(&mut self, row: usize, matched: usize, cost: f64) {
            if row == self.costs.len() {
                let better = matched > self.best_key.0
                    || (matched == self.best_key.0 && cost < self.best_key.1);
                if better {
                    self.best_key = (matched, cost);
                    self.best = self.current.clone();
                }
                return;
            }
            // even matching every remaining row cannot beat the best count
            let remaining = self.costs.len() - row;
            if matched + remaining < self.best_key.0 {
                return;
            }
            for col in 0..self.used.len() {
                let c = self.costs[row][col];
                if self.used[col] || !c.is_finite() {
                    continue;
                }
                self.used[col] = true;
                self.current[row] = Some(col);
                self.visit(row + 1, matched + 1, cost + c);
                self.current[row] = None;
                self.used[col] = false;
            }
            self.visit(row + 1, matched, cost);
        }
    }

    let rows = costs.len();
    let cols = costs.first().map_or(0, Vec::len);
    let mut search = Search {
        costs,
        current: vec![None; rows],
        used: vec![false; cols],
        best: vec![None; rows],
        best_key: (0, f64::INFINITY),
    };
    search.visit(0, 0, 0.0);
    search.best
}

/// Each row in order takes its cheapest free column.
fn greedy_assignment(costs: &[Vec<f64>]) -> Vec<Option<usize>> {
    let cols = costs.first().map_or(0, Vec::len);
    let mut used = vec![false; cols];
    costs
        .iter()
        .map(|row| {
            let pick = (0..cols)
                .filter(|&j| !used[j] && row[j].is_finite())
                .min_by(|&a, &b| row[a].total_cmp(&row[b]));
            if let Some(j) = pick {
                used[j] = true;
            }
            pick
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Dimension, Domain};

    fn plane() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "plane",
            vec![Dimension::linear("x", -100.0, 100.0), Dimension::linear("y", -100.0, 100.0)],
        )])
        .unwrap()
    }

    fn traj(s: &ConceptualSpace, id: &str, pts: &[(f64, f64, f64)]) -> Trajectory {
        Trajectory::new(s, id, pts.iter().map(|&(t, x, y)| (t, s.point([x, y]).unwrap())).collect()).unwrap()
    }

    #[test]
    fn continuation_matches() {
        let s = plane();
        let pre = [traj(&s, "a", &[(0.0, 0.0, 0.0), (1.0, 1.0, 0.0)])];
        let post = [traj(&s, "a2", &[(3.0, 3.0, 0.0), (4.0, 4.0, 0.0)])];
        let r = reidentify(&s, &pre, &post, Extrapolation::ConstantVelocity).unwrap();
        assert_eq!(r.matches.len(), 1);
        assert!(r.matches[0].cost < 1e-12);
        assert!(r.exhaustive);
    }

    #[test]
    fn crossing_objects_keep_identity() {
        // a moves right-up, b moves right-down; they cross at x = 5 during the gap
        let s = plane();
        let pre = [
            traj(&s, "a", &[(0.0, 0.0, 0.0), (1.0, 1.0, 1.0)]),
            traj(&s, "b", &[(0.0, 0.0, 10.0), (1.0, 1.0, 9.0)]),
        ];
        let post = [
            traj(&s, "p", &[(6.0, 6.0, 4.0)]),
            traj(&s, "q", &[(6.0, 6.0, 6.0)]),
        ];
        let r = reidentify(&s, &pre, &post, Extrapolation::ConstantVelocity).unwrap();
        let pairs: Vec<(&str, &str)> = r.matches.iter().map(|m| (m.pre_id.as_str(), m.post_id.as_str())).collect();
        assert_eq!(pairs, vec![("a", "q"), ("b", "p")]);
        // proximity alone (last pre sample to first post sample) would pick the other pairing
        let near = |p: &Trajectory, q: &Trajectory| s.distance(&p.last().unwrap().1, &q.first().unwrap().1).unwrap();
        assert!(near(&pre[0], &post[0]) + near(&pre[1], &post[1]) <= near(&pre[0], &post[1]) + near(&pre[1], &post[0]));
    }

    #[test]
    fn unmatched_entries_are_reported() {
        let s = plane();
        let pre = [traj(&s, "a", &[(0.0, 0.0, 0.0), (1.0, 1.0, 0.0)])];
        let post = [traj(&s, "p", &[(2.0, 2.0, 0.0)]), traj(&s, "q", &[(2.0, 9.0, 9.0)])];
        let r = reidentify(&s, &pre, &post, Extrapolation::ConstantVelocity).unwrap();
        assert_eq!(r.matches[0].post_id, "p");
        assert_eq!(r.unmatched_post, vec!["q"]);
        assert!(r.unmatched_pre.is_empty());
        // post trajectory overlapping the pre one in time cannot match it
        let early = [traj(&s, "e", &[(0.5, 0.5, 0.0)])];
        let r = reidentify(&s, &pre, &early, Extrapolation::ConstantVelocity).unwrap();
        assert!(r.matches.is_empty());
        assert_eq!(r.unmatched_pre, vec!["a"]);
    }

    #[test]
    fn input_errors() {
        let s = plane();
        let pre = [traj(&s, "a", &[(0.0, 0.0, 0.0)])];
        let post = [traj(&s, "p", &[(2.0, 2.0, 0.0)])];
        assert!(reidentify(&s, &pre, &post, Extrapolation::ConstantVelocity).is_err());
        assert!(reidentify(&s, &[], &post, Extrapolation::ConstantVelocity).is_err());
    }

    #[test]
    fn greedy_fallback_for_large_problems() {
        let s = plane();
        let pre: Vec<_> = (0..9)
            .map(|i| traj(&s, &format!("o{i}"), &[(0.0, i as f64 * 10.0 - 40.0, 0.0), (1.0, i as f64 * 10.0 - 40.0, 1.0)]))
            .collect();
        let post: Vec<_> = (0..9)
            .rev()
            .map(|i| traj(&s, &format!("n{i}"), &[(2.0, i as f64 * 10.0 - 40.0, 2.0)]))
            .collect();
        let r = reidentify(&s, &pre, &post, Extrapolation::ConstantVelocity).unwrap();
        assert!(!r.exhaustive);
        for m in &r.matches {
            assert_eq!(m.pre_id[1..], m.post_id[1..]);
            assert!(m.cost < 1e-12);
        }
    }
}

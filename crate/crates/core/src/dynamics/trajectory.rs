use crate::error::{Error, Result};
use crate::space::{ConceptualSpace, Point, SpaceId};

/// Motion law used to project a trajectory past its last sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Extrapolation {
    /// Velocity of the last two samples.
    #[default]
    ConstantVelocity,
    /// Parabola through the last three samples.
    Quadratic,
}

/// One object's samples `(t, point)` with strictly increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    object_id: String,
    samples: Vec<(f64, Point)>,
    space: SpaceId,
}

impl Trajectory {
    pub fn new(
        space: &ConceptualSpace,
        object_id: impl Into<String>,
        samples: Vec<(f64, Point)>,
    ) -> Result<Self> {
        let mut traj = Trajectory {
            object_id: object_id.into(),
            samples: Vec::with_capacity(samples.len()),
            space: space.id(),
        };
        for (t, p) in samples {
            traj.push(space, t, p)?;
        }
        Ok(traj)
    }

    /// Appends a sample later than every existing one.
    pub fn push(&mut self, space: &ConceptualSpace, t: f64, p: Point) -> Result<()> {
        if self.space != space.id() {
            return Err(Error::SpaceMismatch);
        }
        space.check(&p)?;
        if !t.is_finite() {
            return Err(Error::InvalidTrajectory(format!(
                "`{}`: non-finite timestamp",
                self.object_id
            )));
        }
        if let Some((last, _)) = self.samples.last() {
            if t <= *last {
                return Err(Error::InvalidTrajectory(format!(
                    "`{}`: timestamp {t} does not follow {last}",
                    self.object_id
                )));
            }
        }
        self.samples.push((t, p));
        Ok(())
    }

    pub fn object_id(&self) -> &str {
        &self.object_id
    }

    pub fn samples(&self) -> &[(f64, Point)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> Option<&(f64, Point)> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&(f64, Point)> {
        self.samples.last()
    }

    fn check(&self, space: &ConceptualSpace) -> Result<()> {
        if self.space != space.id() {
            Err(Error::SpaceMismatch)
        } else {
            Ok(())
        }
    }

    /// Position at future time `t`. Linear coordinates that would leave
    /// the space are clamped to its boundary.
    pub fn extrapolate(&self, space: &ConceptualSpace, t: f64, mode: Extrapolation) -> Result<Point> {
        self.check(space)?;
        let needed = match mode {
            Extrapolation::ConstantVelocity => 2,
            Extrapolation::Quadratic => 3,
        };
        if self.samples.len() < needed {
            return Err(Error::InvalidTrajectory(format!(
                "`{}`: extrapolation needs {needed} samples, have {}",
                self.object_id,
                self.samples.len()
            )));
        }
        let (t_last, p_last) = self.samples.last().expect("nonempty");
        if t.partial_cmp(t_last) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidTrajectory(format!(
                "`{}`: extrapolation time {t} is not after the last sample {t_last}",
                self.object_id
            )));
        }
        let n = self.samples.len();
        let coords = space
            .dimensions()
            .enumerate()
            .map(|(i, dim)| {
                let (t2, x2) = (*t_last, p_last.coords()[i]);
                let (t1, p1) = &self.samples[n - 2];
                // unwrap circular coordinates backwards from the last sample
                let x1 = x2 - dim.signed_delta(p1.coords()[i], x2);
                let raw = match mode {
                    Extrapolation::ConstantVelocity => x2 + (x2 - x1) / (t2 - t1) * (t - t2),
                    Extrapolation::Quadratic => {
                        let (t0, p0) = &self.samples[n - 3];
                        let x0 = x1 - dim.signed_delta(p0.coords()[i], p1.coords()[i]);
                        lagrange3([*t0, *t1, t2], [x0, x1, x2], t)
                    }
                };
                dim.wrap(raw)
            })
            .collect::<Vec<_>>();
        Ok(space.point_unchecked(coords))
    }

    /// Linear interpolation between the samples bracketing `t`; circular
    /// coordinates follow the shorter arc.
    pub fn interpolate_gap(&self, space: &ConceptualSpace, t: f64) -> Result<Point> {
        self.check(space)?;
        let (Some((t0, _)), Some((t1, _))) = (self.samples.first(), self.samples.last()) else {
            return Err(Error::InvalidTrajectory("empty trajectory".into()));
        };
        if !(t >= *t0 && t <= *t1) {
            return Err(Error::InvalidTrajectory(format!(
                "`{}`: time {t} outside the sampled range [{t0}, {t1}]",
                self.object_id
            )));
        }
        let idx = self.samples.partition_point(|(s, _)| *s < t);
        let (ta, pa) = &self.samples[idx];
        if *ta == t {
            return Ok(pa.clone());
        }
        let (tb, pb) = &self.samples[idx - 1];
        let frac = (t - tb) / (ta - tb);
        Ok(space.point_unchecked(space.lerp_coords(pb.coords(), pa.coords(), frac)))
    }

    /// Mean squared discrete acceleration; zero for constant velocity.
    pub fn smoothness(&self, space: &ConceptualSpace) -> Result<f64> {
        self.check(space)?;
        let n = self.samples.len();
        if n < 3 {
            return Err(Error::InvalidTrajectory(format!(
                "`{}`: smoothness needs 3 samples, have {n}",
                self.object_id
            )));
        }
        let mut total = 0.0;
        for w in self.samples.windows(3) {
            let [(ta, pa), (tb, pb), (tc, pc)] = w else {
                unreachable!()
            };
            let half_span = (tc - ta) / 2.0;
            for (i, dim) in space.dimensions().enumerate() {
                let v1 = dim.signed_delta(pa.coords()[i], pb.coords()[i]) / (tb - ta);
                let v2 = dim.signed_delta(pb.coords()[i], pc.coords()[i]) / (tc - tb);
                let acc = (v2 - v1) / half_span;
                total += acc * acc;
            }
        }
        Ok(total / (n - 2) as f64)
    }
}

fn lagrange3(ts: [f64; 3], xs: [f64; 3], t: f64) -> f64 {
    let mut out = 0.0;
    for i in 0..3 {
        let mut basis = 1.0;
        for j in 0..3 {
            if i != j {
                basis *= (t - ts[j]) / (ts[i] - ts[j]);
            }
        }
        out += xs[i] * basis;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Dimension, Domain};

    fn plane() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "plane",
            vec![Dimension::linear("x", -50.0, 50.0), Dimension::linear("y", -50.0, 50.0)],
        )])
        .unwrap()
    }

    fn traj(s: &ConceptualSpace, pts: &[(f64, f64, f64)]) -> Trajectory {
        Trajectory::new(
            s,
            "obj",
            pts.iter().map(|&(t, x, y)| (t, s.point([x, y]).unwrap())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn constant_velocity() {
        let s = plane();
        let t = traj(&s, &[(0.0, 0.0, 0.0), (1.0, 1.0, 0.0)]);
        let p = t.extrapolate(&s, 2.0, Extrapolation::ConstantVelocity).unwrap();
        assert_eq!(p.coords(), &[2.0, 0.0]);
        let still = traj(&s, &[(0.0, 3.0, 3.0), (1.0, 3.0, 3.0)]);
        assert_eq!(
            still.extrapolate(&s, 17.5, Extrapolation::ConstantVelocity).unwrap().coords(),
            &[3.0, 3.0]
        );
    }

    #[test]
    fn quadratic_parabola() {
        let s = ConceptualSpace::new(vec![Domain::new("h", vec![Dimension::linear("height", 0.0, 20.0)])]).unwrap();
        let t = Trajectory::new(
            &s,
            "ball",
            vec![
                (0.0, s.point([0.0]).unwrap()),
                (1.0, s.point([1.0]).unwrap()),
                (2.0, s.point([4.0]).unwrap()),
            ],
        )
        .unwrap();
        let p = t.extrapolate(&s, 3.0, Extrapolation::Quadratic).unwrap();
        assert!((p.coords()[0] - 9.0).abs() < 1e-12);
    }

    #[test]
    fn extrapolation_errors() {
        let s = plane();
        let one = traj(&s, &[(0.0, 0.0, 0.0)]);
        assert!(one.extrapolate(&s, 1.0, Extrapolation::ConstantVelocity).is_err());
        let two = traj(&s, &[(0.0, 0.0, 0.0), (1.0, 1.0, 0.0)]);
        assert!(two.extrapolate(&s, 1.0, Extrapolation::ConstantVelocity).is_err());
        assert!(two.extrapolate(&s, 0.5, Extrapolation::ConstantVelocity).is_err());
        assert!(two.extrapolate(&s, 3.0, Extrapolation::Quadratic).is_err());
    }

    #[test]
    fn extrapolation_clamps_to_space() {
        let s = plane();
        let t = traj(&s, &[(0.0, 40.0, 0.0), (1.0, 45.0, 0.0)]);
        assert_eq!(
            t.extrapolate(&s, 3.0, Extrapolation::ConstantVelocity).unwrap().coords(),
            &[50.0, 0.0]
        );
    }

    #[test]
    fn timestamps_must_increase() {
        let s = plane();
        let p = s.point([0.0, 0.0]).unwrap();
        assert!(Trajectory::new(&s, "x", vec![(1.0, p.clone()), (1.0, p.clone())]).is_err());
        assert!(Trajectory::new(&s, "x", vec![(1.0, p.clone()), (0.5, p)]).is_err());
    }

    #[test]
    fn gap_interpolation() {
        let s = plane();
        let t = traj(&s, &[(0.0, 0.0, 0.0), (2.0, 2.0, 2.0)]);
        assert_eq!(t.interpolate_gap(&s, 1.0).unwrap().coords(), &[1.0, 1.0]);
        assert_eq!(t.interpolate_gap(&s, 2.0).unwrap().coords(), &[2.0, 2.0]);
        assert_eq!(t.interpolate_gap(&s, 0.0).unwrap().coords(), &[0.0, 0.0]);
        assert!(t.interpolate_gap(&s, 2.5).is_err());
        assert!(t.interpolate_gap(&s, -0.1).is_err());
    }

    #[test]
    fn circular_gap_uses_short_arc() {
        let s = ConceptualSpace::new(vec![Domain::new("c", vec![Dimension::circular("hue", 360.0)])]).unwrap();
        let t = Trajectory::new(
            &s,
            "h",
            vec![(0.0, s.point([350.0]).unwrap()), (2.0, s.point([10.0]).unwrap())],
        )
        .unwrap();
        let mid = t.interpolate_gap(&s, 1.0).unwrap().coords()[0];
        assert!(mid.abs() < 1e-9 || (mid - 360.0).abs() < 1e-9, "{mid}");
        let ahead = t.extrapolate(&s, 3.0, Extrapolation::ConstantVelocity).unwrap().coords()[0];
        assert!((ahead - 20.0).abs() < 1e-9);
    }

    #[test]
    fn smoothness_scores() {
        let s = plane();
        let line = traj(&s, &[(0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (2.0, 2.0, 2.0), (3.0, 3.0, 3.0)]);
        assert_eq!(line.smoothness(&s).unwrap(), 0.0);
        let zig = traj(&s, &[(0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (2.0, 2.0, 0.0)]);
        assert!(zig.smoothness(&s).unwrap() > 0.0);
        let short = traj(&s, &[(0.0, 0.0, 0.0), (1.0, 1.0, 1.0)]);
        assert!(short.smoothness(&s).is_err());
    }
}

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Occupants placed either around a round table or along a straight side.
///
/// Circular angles are degrees measured clockwise; "x is to the right of
/// y" holds when x sits strictly between 0 and 180 degrees clockwise from y.
#[derive(Debug, Clone, PartialEq)]
pub enum SeatingFrame {
    Circular {
        center: [f64; 2],
        seats: Vec<(String, f64)>,
    },
    Linear {
        seats: Vec<(String, f64)>,
    },
}

fn validate(seats: &[(String, f64)]) -> Result<()> {
    let mut ids = HashSet::new();
    for (i, (id, pos)) in seats.iter().enumerate() {
        if !pos.is_finite() {
            return Err(Error::InvalidFrame(format!("`{id}` has a non-finite position")));
        }
        if !ids.insert(id.as_str()) {
            return Err(Error::InvalidFrame(format!("`{id}` is seated twice")));
        }
        if let Some((other, _)) = seats[..i].iter().find(|(_, p)| p == pos) {
            return Err(Error::InvalidFrame(format!("`{other}` and `{id}` share a seat")));
        }
    }
    Ok(())
}

impl SeatingFrame {
    pub fn circular(center: [f64; 2], seats: Vec<(String, f64)>) -> Result<Self> {
        let seats: Vec<(String, f64)> = seats
            .into_iter()
            .map(|(id, a)| (id, crate::space::wrap_period(a, 360.0)))
            .collect();
        validate(&seats)?;
        Ok(SeatingFrame::Circular { center, seats })
    }

    pub fn linear(seats: Vec<(String, f64)>) -> Result<Self> {
        validate(&seats)?;
        Ok(SeatingFrame::Linear { seats })
    }

    pub fn seats(&self) -> &[(String, f64)] {
        match self {
            SeatingFrame::Circular { seats, .. } | SeatingFrame::Linear { seats } => seats,
        }
    }

    pub fn ids(&self) -> Vec<String> {
        self.seats().iter().map(|(id, _)| id.clone()).collect()
    }

    fn position(&self, id: &str) -> Result<f64> {
        self.seats()
            .iter()
            .find(|(s, _)| s == id)
            .map(|(_, p)| *p)
            .ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }
}

/// Whether `x` is to the right of `y` in the frame.
pub fn right_of(frame: &SeatingFrame, x: &str, y: &str) -> Result<bool> {
    let (px, py) = (frame.position(x)?, frame.position(y)?);
    Ok(match frame {
        SeatingFrame::Circular { .. } => {
            let offset = (px - py).rem_euclid(360.0);
            offset > 0.0 && offset < 180.0
        }
        SeatingFrame::Linear { .. } => px > py,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitivityReport {
    pub transitive: bool,
    /// Triples `(x, y, z)` with x right of y, y right of z, x not right of z.
    pub counterexamples: Vec<(String, String, String)>,
}

/// Exhaustive check of every ordered triple of distinct `ids`.
pub fn transitivity_check(frame: &SeatingFrame, ids: &[String]) -> Result<TransitivityReport> {
    if ids.len() < 3 {
        return Err(Error::InvalidFrame(
            "transitivity needs at least three occupants".into(),
        ));
    }
    let n = ids.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = right_of(frame, &ids[i], &ids[j])?;
        }
    }
    let mut counterexamples = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z {
                    continue;
                }
                if rel[x][y] && rel[y][z] && !rel[x][z] {
                    counterexamples.push((ids[x].clone(), ids[y].clone(), ids[z].clone()));
                }
            }
        }
    }
    Ok(TransitivityReport {
        transitive: counterexamples.is_empty(),
        counterexamples,
    })
}

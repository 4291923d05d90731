//! Facet enumeration for low-dimensional convex hulls.

use crate::regions::Halfspace;

/// Counterclockwise hull of 2-D points (Andrew's monotone chain), without
/// collinear boundary points.
pub fn convex_polygon(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn span(points: &[Vec<f64>]) -> f64 {
    let d = points[0].len();
    (0..d)
        .map(|i| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                    (lo.min(p[i]), hi.max(p[i]))
                });
            hi - lo
        })
        .fold(0.0, f64::max)
}

/// Inequality description of a full-dimensional hull in 1, 2 or 3
/// dimensions. Returns `None` for degenerate (flat) hulls, higher
/// dimensions, or 3-D inputs too large for facet enumeration.
pub(crate) fn hull_halfspaces(points: &[Vec<f64>]) -> Option<Vec<Halfspace>> {
    let d = points.first()?.len();
    let scale = span(points);
    if scale == 0.0 {
        return None;
    }
    match d {
        1 => {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            Some(vec![
                Halfspace::new(vec![-1.0], -lo),
                Halfspace::new(vec![1.0], hi),
            ])
        }
        2 => {
            let pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
            let poly = convex_polygon(&pts);
            if poly.len() < 3 {
                return None;
            }
            let mut out = Vec::with_capacity(poly.len());
            for (i, a) in poly.iter().enumerate() {
                let b = poly[(i + 1) % poly.len()];
                let normal = vec![b[1] - a[1], a[0] - b[0]];
                let offset = normal[0] * a[0] + normal[1] * a[1];
                out.push(Halfspace::new(normal, offset).normalized());
            }
            Some(out)
        }
        3 if points.len() <= 64 => facets_3d(points, scale),
        _ => None,
    }
}

fn facets_3d(points: &[Vec<f64>], scale: f64) -> Option<Vec<Halfspace>> {
    let eps = 1e-9 * scale;
    let n = points.len();
    let sub = |a: &[f64], b: &[f64]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let mut facets: Vec<Halfspace> = Vec::new();
    let mut full_dimensional = false;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let u = sub(&points[j], &points[i]);
                let v = sub(&points[k], &points[i]);
                let normal = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                let norm = (normal[0].powi(2) + normal[1].powi(2) + normal[2].powi(2)).sqrt();
                if norm <= eps * scale {
                    continue;
                }
                let unit = [normal[0] / norm, normal[1] / norm, normal[2] / norm];
                let base = unit[0] * points[i][0] + unit[1] * points[i][1] + unit[2] * points[i][2];
                let (mut above, mut below) = (false, false);
                for p in points {
                    let s = unit[0] * p[0] + unit[1] * p[1] + unit[2] * p[2] - base;
                    if s > eps {
                        above = true;
                    } else if s < -eps {
                        below = true;
                    }
                }
                if above || below {
                    full_dimensional = true;
                }
                let candidate = match (above, below) {
                    (false, true) => Halfspace::new(unit.to_vec(), base),
                    (true, false) => Halfspace::new(unit.iter().map(|c| -c).collect(), -base),
                    _ => continue,
                };
                let duplicate = facets.iter().any(|f| {
                    f.normal
                        .iter()
                        .zip(&candidate.normal)
                        .all(|(a, b)| (a - b).abs() < 1e-9)
                        && (f.offset - candidate.offset).abs() < eps
                });
                if !duplicate {
                    facets.push(candidate);
                }
            }
        }
    }
    if full_dimensional && facets.len() >= 4 {
        Some(facets)
    } else {
        None
    }
}

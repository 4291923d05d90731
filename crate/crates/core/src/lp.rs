//! Dense two-phase simplex for the small linear programs the region code
//! needs: convex-combination feasibility, bounding boxes of halfspace
//! polytopes and implied-constraint checks.
//!
//! Problems are stated as `maximize c·x` subject to linear rows and
//! `x >= 0`. Bland's rule is used throughout, so the solver never cycles.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Row {
    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        Row { coeffs, relation: Relation::Le, rhs }
    }

    pub fn eq(coeffs: Vec<f64>, rhs: f64) -> Self {
        Row { coeffs, relation: Relation::Eq, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 100_000;

struct Tableau {
    /// `rows` constraint rows followed by the objective row; last column is the rhs.
    cells: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.cells[i][self.width]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.cells[row][col];
        for v in self.cells[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.cells[row].clone();
        for (i, r) in self.cells.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = r[col];
            if factor != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland's-rule pivots against the objective row. Columns for
    /// which `allowed` is false never enter. Returns false when unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> Option<bool> {
        let m = self.basis.len();
        for _ in 0..MAX_PIVOTS {
            let obj = &self.cells[m];
            let entering = (0..self.width).find(|&j| allowed[j] && obj[j] < -PIVOT_EPS);
            let Some(col) = entering else {
                return Some(true);
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.cells[i][col];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - PIVOT_EPS
                                || (ratio <= br + PIVOT_EPS && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                None => return Some(false),
                Some((row, _)) => self.pivot(row, col),
            }
        }
        None
    }

    fn set_objective(&mut self, costs: &[f64]) {
        let m = self.basis.len();
        let mut obj = vec![0.0; self.width + 1];
        for (j, c) in costs.iter().enumerate() {
            obj[j] = -c;
        }
        for i in 0..m {
            let cb = costs[self.basis[i]];
            if cb != 0.0 {
                for (o, v) in obj.iter_mut().zip(&self.cells[i]) {
                    *o += cb * v;
                }
            }
        }
        self.cells[m] = obj;
    }
}

/// Maximizes `objective · x` subject to `rows` and `x >= 0`.
///
/// `feas_tol` is the largest total constraint residual still accepted as
/// feasible at the end of phase one.
pub(crate) fn maximize(objective: &[f64], rows: &[Row], feas_tol: f64) -> Outcome {
    let n = objective.len();
    let m = rows.len();

    let mut n_slack = 0;
    let mut n_art = 0;
    let normalized: Vec<Row> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.coeffs.len(), n);
            if r.rhs < 0.0 {
                Row {
                    coeffs: r.coeffs.iter().map(|c| -c).collect(),
                    relation: match r.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    },
                    rhs: -r.rhs,
                }
            } else {
                r.clone()
            }
        })
        .collect();
    for r in &normalized {
        match r.relation {
            Relation::Le => n_slack += 1,
            Relation::Ge => {
                n_slack += 1;
                n_art += 1;
            }
            Relation::Eq => n_art += 1,
        }
    }

    let width = n + n_slack + n_art;
    let art_start = n + n_slack;
    let mut cells = vec![vec![0.0; width + 1]; m + 1];
    let mut basis = vec![0; m];
    let (mut s, mut a) = (n, art_start);
    for (i, r) in normalized.iter().enumerate() {
        cells[i][..n].copy_from_slice(&r.coeffs);
        cells[i][width] = r.rhs;
        match r.relation {
            Relation::Le => {
                cells[i][s] = 1.0;
                basis[i] = s;
                s += 1;
            }
            Relation::Ge => {
                cells[i][s] = -1.0;
                s += 1;
                cells[i][a] = 1.0;
                basis[i] = a;
                a += 1;
            }
            Relation::Eq => {
                cells[i][a] = 1.0;
                basis[i] = a;
                a += 1;
            }
        }
    }
    let mut tab = Tableau { cells, basis, width };

    if n_art > 0 {
        let mut phase1 = vec![0.0; width];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -1.0;
        }
        tab.set_objective(&phase1);
        let all = vec![true; width];
        if tab.optimize(&all).is_none() {
            return Outcome::Infeasible;
        }
        if tab.cells[m][width] < -feas_tol {
            return Outcome::Infeasible;
        }
        // drive artificials out of the basis where possible
        for i in 0..m {
            if tab.basis[i] >= art_start {
                if let Some(j) = (0..art_start).find(|&j| tab.cells[i][j].abs() > 1e-9) {
                    tab.pivot(i, j);
                }
            }
        }
    }

    let mut costs = vec![0.0; width];
    costs[..n].copy_from_slice(objective);
    tab.set_objective(&costs);
    let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
    match tab.optimize(&allowed) {
        None => Outcome::Infeasible,
        Some(false) => Outcome::Unbounded,
        Some(true) => {
            let mut x = vec![0.0; n];
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < n {
                    x[b] = tab.rhs(i).max(0.0);
                }
            }
            let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
            Outcome::Optimal { x, value }
        }
    }
}

/// Maximizes `objective · x` over `{x : A x <= b, lo <= x <= hi}` with
/// finite bounds. Returns `None` if the polytope is empty.
pub(crate) fn maximize_in_box(
    objective: &[f64],
    constraints: &[(Vec<f64>, f64)],
    bounds: &[(f64, f64)],
    feas_tol: f64,
) -> Option<(Vec<f64>, f64)> {
    let n = bounds.len();
    let mut rows = Vec::with_capacity(constraints.len() + n);
    for (normal, offset) in constraints {
        let shift: f64 = normal.iter().zip(bounds).map(|(a, (lo, _))| a * lo).sum();
        rows.push(Row::le(normal.clone(), offset - shift));
    }
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        let mut coeffs = vec![0.0; n];
        coeffs[i] = 1.0;
        rows.push(Row::le(coeffs, hi - lo));
    }
    match maximize(objective, &rows, feas_tol) {
        Outcome::Optimal { x, .. } => {
            let x: Vec<f64> = x.iter().zip(bounds).map(|(y, (lo, _))| y + lo).collect();
            let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
            Some((x, value))
        }
        Outcome::Infeasible => None,
        // bounded by construction
        Outcome::Unbounded => unreachable!("box-bounded program reported unbounded"),
    }
}

/// Whether `target` is a convex combination of `generators`, with total
/// residual at most `tol`.
pub(crate) fn in_convex_hull(generators: &[Vec<f64>], target: &[f64], tol: f64) -> bool {
    let n = generators.len();
    let d = target.len();
    let mut rows = Vec::with_capacity(d + 1);
    rows.push(Row::eq(vec![1.0; n], 1.0));
    for i in 0..d {
        rows.push(Row::eq(generators.iter().map(|g| g[i]).collect(), target[i]));
    }
    !matches!(maximize(&vec![0.0; n], &rows, tol), Outcome::Infeasible)
}

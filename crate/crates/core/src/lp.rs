//! Two-phase primal simplex over exact rationals.
//!
//! All variables are nonnegative. Entering columns follow Dantzig's rule and
//! switch permanently to Bland's rule after a run of degenerate pivots, so
//! the method always terminates.

use num::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<(usize, Rational)>,
    relation: Relation,
    rhs: Rational,
}

/// `maximize c.x` subject to linear rows, `x >= 0`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

const DEGENERATE_STREAK: usize = 50;

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds `sum coeffs <relation> rhs`. Repeated indices are summed.
    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars));
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Any feasible point, or `None`.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        match self.maximize(&[]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
        }
    }

    pub fn maximize(&self, objective: &[(usize, Rational)]) -> LpOutcome {
        let mut t = Tableau::build(self);
        if t.artificial_count > 0 {
            let phase1: Vec<(usize, Rational)> = (t.artificial_start..t.artificial_end())
                .map(|j| (j, -Rational::one()))
                .collect();
            t.set_objective(&phase1);
            t.optimize(t.total_cols);
            if t.objective_value().is_negative() {
                return LpOutcome::Infeasible;
            }
            t.drive_out_artificials();
        }
        t.set_objective(objective);
        if !t.optimize(t.artificial_start) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.num_vars];
        for (r, &b) in t.basis.iter().enumerate() {
            if b < self.num_vars {
                x[b] = t.rows[r][t.total_cols].clone();
            }
        }
        LpOutcome::Optimal {
            value: t.objective_value(),
            x,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `z_j - c_j`; last entry is the objective value.
    objective: Vec<Rational>,
    basis: Vec<usize>,
    total_cols: usize,
    artificial_start: usize,
    artificial_count: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars;
        let extra = lp.rows.iter().filter(|r| r.relation != Relation::Eq).count();
        // Normalized relations after making every rhs nonnegative.
        let normalized: Vec<(Relation, bool)> = lp
            .rows
            .iter()
            .map(|r| {
                // `a.x >= 0` becomes `-a.x <= 0`, which needs no artificial.
                let flip = r.rhs.is_negative() || (r.rhs.is_zero() && r.relation == Relation::Ge);
                let rel = match (r.relation, flip) {
                    (Relation::Le, true) => Relation::Ge,
                    (Relation::Ge, true) => Relation::Le,
                    (rel, _) => rel,
                };
                (rel, flip)
            })
            .collect();
        let artificial_count = normalized
            .iter()
            .filter(|(rel, _)| *rel != Relation::Le)
            .count();
        let artificial_start = n + extra;
        let total_cols = artificial_start + artificial_count;
        let mut rows = Vec::with_capacity(lp.rows.len());
        let mut basis = Vec::with_capacity(lp.rows.len());
        let mut slack = n;
        let mut artificial = artificial_start;
        for (row, &(rel, flip)) in lp.rows.iter().zip(&normalized) {
            let mut dense = vec![Rational::zero(); total_cols + 1];
            let sign = if flip { -Rational::one() } else { Rational::one() };
            for (j, v) in &row.coeffs {
                dense[*j] += v * &sign;
            }
            dense[total_cols] = &row.rhs * &sign;
            match rel {
                Relation::Le => {
                    dense[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    dense[slack] = -Rational::one();
                    slack += 1;
                    dense[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    dense[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
            }
            rows.push(dense);
        }
        Self {
            rows,
            objective: vec![Rational::zero(); total_cols + 1],
            basis,
            total_cols,
            artificial_start,
            artificial_count,
        }
    }

    fn artificial_end(&self) -> usize {
        self.artificial_start + self.artificial_count
    }

    fn objective_value(&self) -> Rational {
        self.objective[self.total_cols].clone()
    }

    /// Installs `maximize sum c_j x_j` as reduced costs for the current basis.
    fn set_objective(&mut self, c: &[(usize, Rational)]) {
        let mut cost = vec![Rational::zero(); self.total_cols];
        for (j, v) in c {
            cost[*j] += v;
        }
        let mut obj: Vec<Rational> = cost.iter().map(|v| -v).collect();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(&self.rows[r]) {
                if !a.is_zero() {
                    *o += &cost[b] * a;
                }
            }
        }
        self.objective = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        let nz: Vec<usize> = (0..=self.total_cols)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &nz {
            self.rows[r][j] *= &inv;
        }
        let pivot_row: Vec<(usize, Rational)> =
            nz.iter().map(|&j| (j, self.rows[r][j].clone())).collect();
        let eliminate = |target: &mut Vec<Rational>| {
            if target[c].is_zero() {
                return;
            }
            let factor = target[c].clone();
            for (j, v) in &pivot_row {
                target[*j] -= &factor * v;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.objective);
        self.basis[r] = c;
    }

    /// Runs primal simplex over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let mut bland = false;
        let mut streak = 0;
        loop {
            let entering = if bland {
                (0..allowed).find(|&j| self.objective[j].is_negative())
            } else {
                (0..allowed)
                    .filter(|&j| self.objective[j].is_negative())
                    .min_by(|&a, &b| self.objective[a].cmp(&self.objective[b]))
            };
            let Some(c) = entering else {
                return true;
            };
            let rhs = self.total_cols;
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, ratio)) = best else {
                return false;
            };
            if ratio.is_zero() {
                streak += 1;
                if streak >= DEGENERATE_STREAK {
                    bland = true;
                }
            } else {
                streak = 0;
            }
            self.pivot(r, c);
        }
    }

    /// Pivots zero-valued artificials out of the basis and drops rows that
    /// turn out to be redundant.
    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.artificial_start {
                r += 1;
                continue;
            }
            match (0..self.artificial_start).find(|&j| !self.rows[r][j].is_zero()) {
                Some(c) => {
                    self.pivot(r, c);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn q(v: i64) -> Rational {
        int(v)
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.add(vec![(0, q(1))], Relation::Le, q(4));
        lp.add(vec![(1, q(2))], Relation::Le, q(12));
        lp.add(vec![(0, q(3)), (1, q(2))], Relation::Le, q(18));
        let out = lp.maximize(&[(0, q(3)), (1, q(5))]);
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: q(36),
                x: vec![q(2), q(6)]
            }
        );
    }

    #[test]
    fn equalities_and_ge() {
        // max x s.t. x + y = 1, y >= 1/3
        let mut lp = LinearProgram::new(2);
        lp.add(vec![(0, q(1)), (1, q(1))], Relation::Eq, q(1));
        lp.add(vec![(1, q(1))], Relation::Ge, ratio(1, 3));
        match lp.maximize(&[(0, q(1))]) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, ratio(2, 3));
                assert_eq!(x, vec![ratio(2, 3), ratio(1, 3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![(0, q(1))], Relation::Ge, q(2));
        lp.add(vec![(0, q(1))], Relation::Le, q(1));
        assert_eq!(lp.maximize(&[]), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.add(vec![(0, q(1))], Relation::Ge, q(2));
        assert_eq!(lp.maximize(&[(0, q(1))]), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        // -x - y = -2 twice, x - y >= 0, max y -> (1, 1)
        let mut lp = LinearProgram::new(2);
        lp.add(vec![(0, q(-1)), (1, q(-1))], Relation::Eq, q(-2));
        lp.add(vec![(0, q(-1)), (1, q(-1))], Relation::Eq, q(-2));
        lp.add(vec![(0, q(1)), (1, q(-1))], Relation::Ge, q(0));
        match lp.maximize(&[(1, q(1))]) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, q(1));
                assert_eq!(x, vec![q(1), q(1)]);
            }
            other => panic!("{other:?}"),
        }
    }
}

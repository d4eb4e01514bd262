//! Linear system attached to a sign pattern, and its exact feasibility test.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use super::certificate::{ConstraintRef, Weighted};
use super::pattern::{Sign, SignPattern};
use crate::game::{GameSpec, Profile};
use crate::graph::Topology;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;
use crate::PlayerId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sense {
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug)]
struct Form {
    coeffs: Vec<(PlayerId, Rational)>,
    sense: Sense,
    rhs: Rational,
}

pub(crate) struct System {
    rows: Vec<(ConstraintRef, Form)>,
    /// Non-zero players, in id order; LP column `k` is `vars[k]`.
    vars: Vec<PlayerId>,
    column: Vec<Option<usize>>,
}

pub(crate) enum Feasibility {
    Feasible(Profile),
    Infeasible(Vec<Weighted>),
}

impl System {
    /// Constraints valid at every qualifying equilibrium that matches
    /// `pattern`. Unknown players only contribute relaxed facts; pairwise
    /// exposure orders are added only when `full` is set.
    pub fn build(
        g: &Topology,
        degrees: &[usize],
        spec: &GameSpec,
        pattern: &SignPattern,
        full: bool,
    ) -> Self {
        let n = g.n();
        let vars: Vec<PlayerId> = (0..n).filter(|&i| pattern.get(i) != Sign::Zero).collect();
        let mut column = vec![None; n];
        for (k, &i) in vars.iter().enumerate() {
            column[i] = Some(k);
        }
        let live_neighbors = |i: PlayerId| -> Vec<(PlayerId, Rational)> {
            g.neighbors(i)
                .iter()
                .filter(|&&j| pattern.get(j) != Sign::Zero)
                .map(|&j| (j, Rational::one()))
                .collect()
        };
        let with_self = |i: PlayerId| {
            let mut c = live_neighbors(i);
            c.push((i, Rational::one()));
            c
        };
        let unit = |i: PlayerId, v: i64| vec![(i, Rational::from_integer(v.into()))];
        let mut rows = Vec::new();
        for i in 0..n {
            match pattern.get(i) {
                Sign::Pos => {
                    rows.push((
                        ConstraintRef::Active { player: i },
                        Form { coeffs: with_self(i), sense: Sense::Eq, rhs: spec.delta.clone() },
                    ));
                    rows.push((
                        ConstraintRef::Positive { player: i },
                        Form { coeffs: unit(i, 1), sense: Sense::Gt, rhs: Rational::zero() },
                    ));
                    rows.push((
                        ConstraintRef::Cap { player: i },
                        Form { coeffs: unit(i, -1), sense: Sense::Ge, rhs: -spec.s_max.clone() },
                    ));
                }
                Sign::Unknown => {
                    rows.push((
                        ConstraintRef::Exposure { player: i },
                        Form { coeffs: with_self(i), sense: Sense::Ge, rhs: spec.delta.clone() },
                    ));
                    rows.push((
                        ConstraintRef::NonNegative { player: i },
                        Form { coeffs: unit(i, 1), sense: Sense::Ge, rhs: Rational::zero() },
                    ));
                    rows.push((
                        ConstraintRef::Cap { player: i },
                        Form { coeffs: unit(i, -1), sense: Sense::Ge, rhs: -spec.s_max.clone() },
                    ));
                }
                Sign::Zero => rows.push((
                    ConstraintRef::Inactive { player: i },
                    Form { coeffs: live_neighbors(i), sense: Sense::Ge, rhs: spec.delta.clone() },
                )),
            }
        }
        for (lower, higher) in consecutive_classes(degrees, &vars) {
            for &h in &higher {
                for &l in &lower {
                    rows.push((
                        ConstraintRef::Order { higher: h, lower: l },
                        Form {
                            coeffs: vec![(l, Rational::one()), (h, -Rational::one())],
                            sense: Sense::Ge,
                            rhs: Rational::zero(),
                        },
                    ));
                }
            }
        }
        if full {
            let zeros: Vec<PlayerId> = pattern.players(Sign::Zero).collect();
            for (lower, higher) in consecutive_classes(degrees, &zeros) {
                for &h in &higher {
                    for &l in &lower {
                        let mut coeffs = live_neighbors(h);
                        coeffs.extend(live_neighbors(l).into_iter().map(|(j, v)| (j, -v)));
                        rows.push((
                            ConstraintRef::ExposureOrder { higher: h, lower: l },
                            Form { coeffs, sense: Sense::Ge, rhs: Rational::zero() },
                        ));
                    }
                }
            }
        }
        Self { rows, vars, column }
    }

    fn col(&self, i: PlayerId) -> usize {
        self.column[i].expect("constraint references a zero player")
    }

    /// Maximizes a common lower bound `t` on the positive efforts; the
    /// strict system is feasible iff the optimum is positive. On failure a
    /// second program finds nonnegative multipliers proving infeasibility.
    pub fn check(&self, n: usize, spec: &GameSpec) -> Feasibility {
        let m = self.vars.len();
        let t = m;
        let mut lp = LinearProgram::new(m + 1);
        let mut strict = false;
        for (_, form) in &self.rows {
            let coeffs: Vec<(usize, Rational)> =
                form.coeffs.iter().map(|(i, v)| (self.col(*i), v.clone())).collect();
            match form.sense {
                Sense::Eq => lp.add(coeffs, Relation::Eq, form.rhs.clone()),
                Sense::Ge if coeffs.len() == 1 && coeffs[0].1.is_positive() && form.rhs.is_zero() => {}
                Sense::Ge => lp.add(coeffs, Relation::Ge, form.rhs.clone()),
                Sense::Gt => {
                    strict = true;
                    let mut c = coeffs;
                    c.push((t, -Rational::one()));
                    lp.add(c, Relation::Ge, form.rhs.clone());
                }
            }
        }
        lp.add(vec![(t, Rational::one())], Relation::Le, spec.s_max.clone());
        if let LpOutcome::Optimal { value, x } = lp.maximize(&[(t, Rational::one())]) {
            if value.is_positive() || !strict {
                let mut profile = Profile::zeros(n);
                for (k, &i) in self.vars.iter().enumerate() {
                    profile.0[i] = x[k].clone();
                }
                return Feasibility::Feasible(profile);
            }
        }
        Feasibility::Infeasible(self.multipliers())
    }

    /// Finds `y` with `sum y_k a_k = 0`, `y >= 0` on inequalities, and either
    /// `sum y_k b_k > 0` or `sum y_k b_k = 0` with weight on a strict row.
    /// Normalized as `b.y >= 0` and `b.y + sum_strict y >= 1`.
    fn multipliers(&self) -> Vec<Weighted> {
        let m = self.vars.len();
        // (row index, sign) per column
        let mut columns: Vec<(usize, i64)> = Vec::new();
        for (k, (_, form)) in self.rows.iter().enumerate() {
            columns.push((k, 1));
            if form.sense == Sense::Eq {
                columns.push((k, -1));
            }
        }
        let mut per_var: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
        let mut b_row = Vec::new();
        let mut norm_row = Vec::new();
        for (c, &(k, sign)) in columns.iter().enumerate() {
            let form = &self.rows[k].1;
            let sign = Rational::from_integer(sign.into());
            for (i, v) in &form.coeffs {
                per_var[self.col(*i)].push((c, v * &sign));
            }
            let b = &form.rhs * &sign;
            let strict = if form.sense == Sense::Gt { Rational::one() } else { Rational::zero() };
            if !b.is_zero() {
                b_row.push((c, b.clone()));
            }
            let nb = b + strict;
            if !nb.is_zero() {
                norm_row.push((c, nb));
            }
        }
        let mut lp = LinearProgram::new(columns.len());
        for coeffs in per_var {
            lp.add(coeffs, Relation::Eq, Rational::zero());
        }
        lp.add(b_row, Relation::Ge, Rational::zero());
        lp.add(norm_row, Relation::Ge, Rational::one());
        let y = lp
            .feasible_point()
            .expect("an infeasible strict system always has a certificate");
        let mut weights: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, &(k, sign)) in columns.iter().enumerate() {
            if !y[c].is_zero() {
                *weights.entry(k).or_insert_with(Rational::zero) +=
                    &y[c] * Rational::from_integer(sign.into());
            }
        }
        weights
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(k, weight)| Weighted {
                constraint: self.rows[k].0.clone(),
                weight,
            })
            .collect()
    }
}

/// Pairs of consecutive degree classes `(lower, higher)` among `players`.
fn consecutive_classes(degrees: &[usize], players: &[PlayerId]) -> Vec<(Vec<PlayerId>, Vec<PlayerId>)> {
    let mut classes: BTreeMap<usize, Vec<PlayerId>> = BTreeMap::new();
    for &i in players {
        classes.entry(degrees[i]).or_default().push(i);
    }
    let classes: Vec<Vec<PlayerId>> = classes.into_values().collect();
    classes
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect()
}

//! Feasibility of small mixed equality / weak / strict systems by
//! substitution and Fourier–Motzkin elimination.

use num::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

/// `coeffs . x  rel  rhs` over a fixed number of variables.
#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FmResult {
    Infeasible,
    /// `free` variables stay undetermined by the equalities. `point` is set
    /// when the equalities pin every variable.
    Feasible { free: usize, point: Option<Vec<Rational>> },
}

/// `x_var = const + sum coeffs[k] x_k` for the later variables.
struct Substitution {
    var: usize,
    expr: Vec<Rational>,
    constant: Rational,
}

pub fn decide(num_vars: usize, rows: Vec<Row>) -> FmResult {
    let (mut eqs, mut ineqs): (Vec<Row>, Vec<Row>) =
        rows.into_iter().partition(|r| r.rel == Rel::Eq);
    let mut subs: Vec<Substitution> = Vec::new();
    while let Some(eq) = eqs.pop() {
        let Some(var) = eq.coeffs.iter().position(|c| !c.is_zero()) else {
            if !eq.rhs.is_zero() {
                return FmResult::Infeasible;
            }
            continue;
        };
        let pivot = eq.coeffs[var].clone();
        let mut expr: Vec<Rational> = eq.coeffs.iter().map(|c| -c / &pivot).collect();
        expr[var] = Rational::zero();
        let constant = &eq.rhs / &pivot;
        for row in eqs.iter_mut().chain(ineqs.iter_mut()) {
            substitute(row, var, &expr, &constant);
        }
        for s in subs.iter_mut() {
            let a = std::mem::take(&mut s.expr[var]);
            if !a.is_zero() {
                for (k, e) in expr.iter().enumerate() {
                    s.expr[k] += &a * e;
                }
                s.constant += &a * &constant;
            }
        }
        subs.push(Substitution { var, expr, constant });
    }
    let free = num_vars - subs.len();
    if !eliminate(num_vars, ineqs) {
        return FmResult::Infeasible;
    }
    let point = (free == 0).then(|| {
        let mut x = vec![Rational::zero(); num_vars];
        for s in &subs {
            x[s.var] = s.constant.clone();
        }
        x
    });
    FmResult::Feasible { free, point }
}

fn substitute(row: &mut Row, var: usize, expr: &[Rational], constant: &Rational) {
    let a = std::mem::take(&mut row.coeffs[var]);
    if a.is_zero() {
        return;
    }
    for (k, e) in expr.iter().enumerate() {
        row.coeffs[k] += &a * e;
    }
    row.rhs -= &a * constant;
}

/// True iff the inequality system has a solution.
fn eliminate(num_vars: usize, mut rows: Vec<Row>) -> bool {
    for var in 0..num_vars {
        rows = simplify(rows);
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coeffs[var].is_positive() {
                lower.push(r);
            } else if r.coeffs[var].is_negative() {
                upper.push(r);
            } else {
                rest.push(r);
            }
        }
        for lo in &lower {
            for up in &upper {
                // a > 0 > b: combine (-b) * lo + a * up to cancel `var`.
                let a = &lo.coeffs[var];
                let b = -&up.coeffs[var];
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(p, q)| p * &b + q * a)
                    .collect();
                let rel = if lo.rel == Rel::Gt || up.rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
                rest.push(Row { coeffs, rel, rhs: &lo.rhs * &b + &up.rhs * a });
            }
        }
        rows = rest;
    }
    rows.iter().all(|r| match r.rel {
        Rel::Ge => !r.rhs.is_positive(),
        Rel::Gt => r.rhs.is_negative(),
        Rel::Eq => r.rhs.is_zero(),
    })
}

/// Scales rows to a unit leading coefficient and keeps only the tightest
/// row per direction. Constant rows are kept as they are.
fn simplify(rows: Vec<Row>) -> Vec<Row> {
    let mut kept: Vec<Row> = Vec::new();
    let mut index: std::collections::HashMap<Vec<Rational>, usize> = Default::default();
    for mut r in rows {
        let Some(lead) = r.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
            kept.push(r);
            continue;
        };
        for c in r.coeffs.iter_mut() {
            *c /= &lead;
        }
        r.rhs /= &lead;
        match index.get(&r.coeffs) {
            Some(&k) => {
                let old = &mut kept[k];
                let tighter = r.rhs > old.rhs || (r.rhs == old.rhs && r.rel == Rel::Gt);
                if tighter {
                    *old = r;
                }
            }
            None => {
                index.insert(r.coeffs.clone(), kept.len());
                kept.push(r);
            }
        }
    }
    kept
}

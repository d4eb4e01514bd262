//! Brute-force cross-checks for small games.
//!
//! Every support is decided with [`fm`]'s substitution and elimination,
//! sharing no solver code with the engine, and profiles can be tested
//! against a plain grid search over each player's payoff.

pub mod corpus;
pub mod fm;

use num::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::ActiveSet;
use crate::game::{payoff_unchecked, GameSpec, Profile};
use crate::graph::Topology;
use crate::rational::{self, Rational};
use crate::{Error, PlayerId, Result};
use fm::{FmResult, Rel, Row};

pub const ORACLE_N_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Infeasible,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub active_set: ActiveSet,
    pub status: Status,
    pub kernel_dim: usize,
    /// Present when the support pins a unique profile.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
}

/// One record per support, in mask order.
pub fn oracle_enumerate(g: &Topology, spec: &GameSpec) -> Result<Vec<OracleRecord>> {
    check_size(g)?;
    spec.validate()?;
    let n = g.n();
    Ok((0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let active = ActiveSet::from_mask(mask, n);
            let rows = support_rows(g, spec, &active);
            record(n, active, fm::decide(active_len(mask), rows))
        })
        .collect())
}

/// Whether some support admits an equilibrium where higher degree never
/// earns less.
pub fn oracle_pne_plus_exists(g: &Topology, spec: &GameSpec) -> Result<bool> {
    check_size(g)?;
    spec.validate()?;
    let n = g.n();
    let degrees = g.degrees();
    Ok((0..1u64 << n).into_par_iter().any(|mask| {
        let active = ActiveSet::from_mask(mask, n);
        let on = |i: PlayerId| active.contains(i);
        // active i, inactive j, deg(i) > deg(j): i earns strictly less
        if (0..n).any(|i| on(i) && (0..n).any(|j| !on(j) && degrees[i] > degrees[j])) {
            return false;
        }
        let mut rows = support_rows(g, spec, &active);
        let m = active.len();
        let col = column_map(n, &active);
        for i in 0..n {
            for j in 0..n {
                if degrees[i] <= degrees[j] {
                    continue;
                }
                let mut coeffs = vec![Rational::zero(); m];
                if on(i) && on(j) {
                    // s_j - s_i >= 0
                    coeffs[col[j].unwrap()] += Rational::one();
                    coeffs[col[i].unwrap()] -= Rational::one();
                } else if !on(i) && !on(j) {
                    // T_i - T_j >= 0
                    for &k in g.neighbors(i) {
                        if let Some(c) = col[k] {
                            coeffs[c] += Rational::one();
                        }
                    }
                    for &k in g.neighbors(j) {
                        if let Some(c) = col[k] {
                            coeffs[c] -= Rational::one();
                        }
                    }
                } else {
                    continue;
                }
                rows.push(Row { coeffs, rel: Rel::Ge, rhs: Rational::zero() });
            }
        }
        matches!(fm::decide(m, rows), FmResult::Feasible { .. })
    }))
}

/// Grid search over `{0, step, 2 step, ..., s_max}` for every player with
/// the others held fixed; each current payoff must reach the grid maximum
/// within `1e-9`.
pub fn numeric_br_check(g: &Topology, spec: &GameSpec, s: &Profile, step: &Rational) -> bool {
    if s.validate(g, spec).is_err() || step <= &Rational::zero() {
        return false;
    }
    let step = rational::to_f64(step);
    let s_max = rational::to_f64(&spec.s_max);
    let cost = rational::to_f64(&spec.cost);
    let points = (s_max / step).floor() as usize;
    (0..g.n()).all(|i| {
        let others: f64 = g.neighbors(i).iter().map(|&j| rational::to_f64(s.get(j))).sum();
        let current = payoff_unchecked(g, spec, s, i);
        let best = (0..=points)
            .map(|k| {
                let x = (k as f64 * step).min(s_max);
                spec.f_at(x + others) - cost * x
            })
            .fold(f64::NEG_INFINITY, f64::max);
        current >= best - 1e-9
    })
}

/// `numeric_br_check` with step `delta / 1000`.
pub fn numeric_br_check_default(g: &Topology, spec: &GameSpec, s: &Profile) -> bool {
    numeric_br_check(g, spec, s, &(&spec.delta / Rational::from_integer(1000.into())))
}

fn check_size(g: &Topology) -> Result<()> {
    if g.n() > ORACLE_N_LIMIT {
        return Err(Error::TooLarge { n: g.n(), limit: ORACLE_N_LIMIT });
    }
    Ok(())
}

fn active_len(mask: u64) -> usize {
    mask.count_ones() as usize
}

fn column_map(n: usize, active: &ActiveSet) -> Vec<Option<usize>> {
    let mut col = vec![None; n];
    for (k, &i) in active.members().iter().enumerate() {
        col[i] = Some(k);
    }
    col
}

/// Equilibrium conditions for a fixed support, over the active efforts:
/// active players sit exactly at `delta` exposure with `0 < s_i <= s_max`,
/// inactive players see at least `delta` from their neighbors.
fn support_rows(g: &Topology, spec: &GameSpec, active: &ActiveSet) -> Vec<Row> {
    let n = g.n();
    let m = active.len();
    let col = column_map(n, active);
    let neighbor_coeffs = |i: PlayerId| {
        let mut c = vec![Rational::zero(); m];
        for &j in g.neighbors(i) {
            if let Some(k) = col[j] {
                c[k] = Rational::one();
            }
        }
        c
    };
    let unit = |k: usize, v: i64| {
        let mut c = vec![Rational::zero(); m];
        c[k] = Rational::from_integer(v.into());
        c
    };
    let mut rows = Vec::new();
    for i in 0..n {
        match col[i] {
            Some(k) => {
                let mut c = neighbor_coeffs(i);
                c[k] = Rational::one();
                rows.push(Row { coeffs: c, rel: Rel::Eq, rhs: spec.delta.clone() });
                rows.push(Row { coeffs: unit(k, 1), rel: Rel::Gt, rhs: Rational::zero() });
                rows.push(Row { coeffs: unit(k, -1), rel: Rel::Ge, rhs: -spec.s_max.clone() });
            }
            None => rows.push(Row { coeffs: neighbor_coeffs(i), rel: Rel::Ge, rhs: spec.delta.clone() }),
        }
    }
    rows
}

fn record(n: usize, active: ActiveSet, result: FmResult) -> OracleRecord {
    match result {
        FmResult::Infeasible => OracleRecord {
            active_set: active,
            status: Status::Infeasible,
            kernel_dim: 0,
            profile: None,
        },
        FmResult::Feasible { free, point } => {
            let profile = point.map(|x| {
                let mut s = Profile::zeros(n);
                for (k, &i) in active.members().iter().enumerate() {
                    s.0[i] = x[k].clone();
                }
                s
            });
            OracleRecord {
                active_set: active,
                status: if free == 0 { Status::Feasible } else { Status::Degenerate },
                kernel_dim: free,
                profile,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn feasible_sets(g: &Topology) -> Vec<(Vec<PlayerId>, Status)> {
        oracle_enumerate(g, &GameSpec::unit())
            .unwrap()
            .into_iter()
            .filter(|r| r.status != Status::Infeasible)
            .map(|r| (r.active_set.members().to_vec(), r.status))
            .collect()
    }

    #[test]
    fn path3_supports() {
        let g = Topology::path(3).unwrap();
        assert_eq!(
            feasible_sets(&g),
            vec![(vec![1], Status::Feasible), (vec![0, 2], Status::Feasible)]
        );
    }

    #[test]
    fn k2_supports() {
        let g = Topology::complete(2).unwrap();
        assert_eq!(
            feasible_sets(&g),
            vec![
                (vec![0], Status::Feasible),
                (vec![1], Status::Feasible),
                (vec![0, 1], Status::Degenerate)
            ]
        );
    }

    #[test]
    fn empty3_plays_delta() {
        let g = Topology::empty(3).unwrap();
        let recs = oracle_enumerate(&g, &GameSpec::unit()).unwrap();
        let feasible: Vec<_> = recs.iter().filter(|r| r.status != Status::Infeasible).collect();
        assert_eq!(feasible.len(), 1);
        assert_eq!(feasible[0].active_set.members(), &[0, 1, 2]);
        assert_eq!(feasible[0].profile, Some(Profile(vec![int(1); 3])));
    }

    #[test]
    fn pne_plus_small() {
        let spec = GameSpec::unit();
        assert!(oracle_pne_plus_exists(&Topology::complete(4).unwrap(), &spec).unwrap());
        assert!(oracle_pne_plus_exists(&Topology::star(4).unwrap(), &spec).unwrap());
    }

    #[test]
    fn size_limit() {
        let g = Topology::path(13).unwrap();
        assert!(matches!(oracle_enumerate(&g, &GameSpec::unit()), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn grid_checks() {
        let spec = GameSpec::unit();
        let p3 = Topology::path(3).unwrap();
        assert!(numeric_br_check_default(&p3, &spec, &Profile::from_ratios(&[(0, 1), (1, 1), (0, 1)])));
        assert!(!numeric_br_check_default(&p3, &spec, &Profile(vec![ratio(1, 2), ratio(1, 2), int(0)])));
        let k2 = Topology::complete(2).unwrap();
        assert!(!numeric_br_check_default(&k2, &spec, &Profile::zeros(2)));
    }
}

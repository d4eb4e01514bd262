use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::game::{GameSpec, Profile};
use crate::graph::Topology;
use crate::linalg::{self, LinearSolution};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;
use crate::{Error, PlayerId, Result};

pub const DEFAULT_N_LIMIT: usize = 20;

/// Players intended to exert strictly positive effort, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActiveSet(Vec<PlayerId>);

impl ActiveSet {
    pub fn new(members: impl IntoIterator<Item = PlayerId>) -> Self {
        let set: BTreeSet<PlayerId> = members.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self((0..n).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn members(&self) -> &[PlayerId] {
        &self.0
    }

    pub fn contains(&self, i: PlayerId) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// An equilibrium with a fixed support. Degenerate solutions stand for a
/// `kernel_dim`-dimensional family; `profile` is then one member of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumSolution {
    pub active_set: ActiveSet,
    pub profile: Profile,
    pub degenerate: bool,
    pub kernel_dim: usize,
}

/// Solves `(I + A_sub) s_A = delta * 1` and checks the remaining equilibrium
/// conditions: `0 < s_i <= s_max` on the support and a neighbor sum of at
/// least `delta` off it. Rank-deficient systems are settled exactly by a
/// max-slack program over the solution family.
pub fn solve_active_set(
    g: &Topology,
    spec: &GameSpec,
    active: &ActiveSet,
) -> Option<EquilibriumSolution> {
    let n = g.n();
    let members = active.members();
    if members.iter().any(|&i| i >= n) {
        return None;
    }
    // Every inactive player needs an active neighbor.
    if (0..n).any(|i| !active.contains(i) && !g.neighbors(i).iter().any(|&j| active.contains(j))) {
        return None;
    }
    let index: Vec<Option<usize>> = {
        let mut idx = vec![None; n];
        for (k, &i) in members.iter().enumerate() {
            idx[i] = Some(k);
        }
        idx
    };
    let m = members.len();
    let matrix: Vec<Vec<Rational>> = members
        .iter()
        .map(|&i| {
            let mut row = vec![Rational::zero(); m];
            row[index[i].unwrap()] = Rational::one();
            for &j in g.neighbors(i) {
                if let Some(k) = index[j] {
                    row[k] = Rational::one();
                }
            }
            row
        })
        .collect();
    match linalg::solve(matrix, vec![spec.delta.clone(); m]) {
        LinearSolution::Inconsistent => None,
        LinearSolution::Unique(x) => {
            let profile = scatter(n, members, x);
            conditions_hold(g, spec, active, &profile).then(|| EquilibriumSolution {
                active_set: active.clone(),
                profile,
                degenerate: false,
                kernel_dim: 0,
            })
        }
        LinearSolution::Family { kernel_dim, .. } => {
            let x = max_slack_point(g, spec, members, &index)?;
            let profile = scatter(n, members, x);
            debug_assert!(conditions_hold(g, spec, active, &profile));
            Some(EquilibriumSolution {
                active_set: active.clone(),
                profile,
                degenerate: true,
                kernel_dim,
            })
        }
    }
}

fn scatter(n: usize, members: &[PlayerId], x: Vec<Rational>) -> Profile {
    let mut s = Profile::zeros(n);
    for (&i, v) in members.iter().zip(x) {
        s.0[i] = v;
    }
    s
}

fn conditions_hold(g: &Topology, spec: &GameSpec, active: &ActiveSet, s: &Profile) -> bool {
    (0..g.n()).all(|i| {
        if active.contains(i) {
            s.get(i).is_positive() && *s.get(i) <= spec.s_max
        } else {
            crate::game::neighbor_sum(g, s, i) >= spec.delta
        }
    })
}

/// Maximizes a common lower bound `t` on the active efforts; the support is
/// attainable iff the optimum is positive.
fn max_slack_point(
    g: &Topology,
    spec: &GameSpec,
    members: &[PlayerId],
    index: &[Option<usize>],
) -> Option<Vec<Rational>> {
    let m = members.len();
    let t = m;
    let mut lp = LinearProgram::new(m + 1);
    let one = Rational::one;
    for i in 0..g.n() {
        let nbrs: Vec<(usize, Rational)> = g
            .neighbors(i)
            .iter()
            .filter_map(|&j| index[j].map(|k| (k, one())))
            .collect();
        match index[i] {
            Some(k) => {
                let mut row = nbrs;
                row.push((k, one()));
                lp.add(row, Relation::Eq, spec.delta.clone());
                lp.add(vec![(k, one())], Relation::Le, spec.s_max.clone());
                lp.add(vec![(k, one()), (t, -one())], Relation::Ge, Rational::zero());
            }
            None => lp.add(nbrs, Relation::Ge, spec.delta.clone()),
        }
    }
    lp.add(vec![(t, one())], Relation::Le, spec.s_max.clone());
    match lp.maximize(&[(t, one())]) {
        LpOutcome::Optimal { value, mut x } if value.is_positive() => {
            x.truncate(m);
            Some(x)
        }
        _ => None,
    }
}

/// Runs every support through [`solve_active_set`]. Output is sorted by the
/// sorted member lists, lexicographically.
pub fn enumerate_pne(
    g: &Topology,
    spec: &GameSpec,
    n_limit: usize,
) -> Result<Vec<EquilibriumSolution>> {
    let n = g.n();
    if n > n_limit || n >= 63 {
        return Err(Error::TooLarge { n, limit: n_limit });
    }
    let mut out: Vec<EquilibriumSolution> = (0..1u64 << n)
        .into_par_iter()
        .filter_map(|mask| solve_active_set(g, spec, &ActiveSet::from_mask(mask, n)))
        .collect();
    out.sort_by(|a, b| a.active_set.cmp(&b.active_set));
    Ok(out)
}

//! Classification of equilibria by the degree/payoff monotonicity property:
//! whenever `|N_i| > |N_j|`, `Pi_i >= Pi_j`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::equilibrium::is_pne;
use crate::game::{ordinal_compare_at_equilibrium, GameSpec, Profile};
use crate::graph::Topology;
use crate::{Error, PlayerId, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PnePlusVerdict {
    pub member: bool,
    /// Pairs `(i, j)` with `deg(i) > deg(j)` but `Pi_i < Pi_j`.
    pub violations: Vec<(PlayerId, PlayerId)>,
}

impl PnePlusVerdict {
    pub fn is_member(&self) -> bool {
        self.member
    }
}

/// Exact and independent of the concrete `f`: every comparison goes
/// through the ordinal reduction valid at equilibria.
pub fn is_pne_plus(g: &Topology, spec: &GameSpec, s: &Profile) -> Result<PnePlusVerdict> {
    if !is_pne(g, spec, s)?.is_equilibrium() {
        return Err(Error::NotEquilibrium);
    }
    let degrees = g.degrees();
    let mut violations = Vec::new();
    for i in 0..g.n() {
        for j in 0..g.n() {
            if degrees[i] > degrees[j]
                && ordinal_compare_at_equilibrium(g, s, i, j) == Ordering::Less
            {
                violations.push((i, j));
            }
        }
    }
    Ok(PnePlusVerdict {
        member: violations.is_empty(),
        violations,
    })
}

/// Closure of a zero-effort set under "a zero at degree `d` forces zero on
/// every player of degree greater than `d`". Equivalently: the seed plus all
/// players whose degree exceeds the smallest seed degree.
pub fn lemma1_propagate(g: &Topology, zeros: &BTreeSet<PlayerId>) -> BTreeSet<PlayerId> {
    let mut closure = zeros.clone();
    let Some(min_degree) = zeros.iter().map(|&u| g.neighbors(u).len()).min() else {
        return closure;
    };
    closure.extend((0..g.n()).filter(|&v| g.neighbors(v).len() > min_degree));
    closure
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_goyal_tree, TreeFamilyParams};
    use crate::rational::int;

    #[test]
    fn complete_graph_is_vacuous() {
        let g = Topology::complete(4).unwrap();
        let s = Profile::indicator(4, &[2], &int(1));
        let v = is_pne_plus(&g, &GameSpec::unit(), &s).unwrap();
        assert!(v.is_member());
    }

    #[test]
    fn star_center_specialized_fails() {
        let g = Topology::star(4).unwrap();
        let s = Profile::indicator(5, &[0], &int(1));
        let v = is_pne_plus(&g, &GameSpec::unit(), &s).unwrap();
        assert!(!v.is_member());
        assert_eq!(v.violations, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
    }

    #[test]
    fn star_leaves_specialized_passes() {
        let g = Topology::star(4).unwrap();
        let s = Profile::indicator(5, &[1, 2, 3, 4], &int(1));
        assert!(is_pne_plus(&g, &GameSpec::unit(), &s).unwrap().is_member());
    }

    #[test]
    fn rejects_non_equilibrium() {
        let g = Topology::path(3).unwrap();
        let s = Profile::from_ratios(&[(1, 2), (1, 2), (0, 1)]);
        assert!(matches!(
            is_pne_plus(&g, &GameSpec::unit(), &s),
            Err(Error::NotEquilibrium)
        ));
    }

    #[test]
    fn verdict_json() {
        let g = Topology::path(3).unwrap();
        let s = Profile::indicator(3, &[1], &int(1));
        let v = is_pne_plus(&g, &GameSpec::unit(), &s).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"member":false,"violations":[[1,0],[1,2]]}"#
        );
    }

    #[test]
    fn propagation_examples() {
        let tree = gen_goyal_tree(&TreeFamilyParams::canonical()).unwrap();
        let g = &tree.topology;
        let closure = lemma1_propagate(g, &BTreeSet::from([0]));
        let expected: BTreeSet<_> = std::iter::once(0)
            .chain((0..g.n()).filter(|&v| g.neighbors(v).len() >= 2))
            .collect();
        assert_eq!(closure, expected);
        assert!(tree.leaves().iter().all(|l| !closure.contains(l)));

        assert!(lemma1_propagate(g, &BTreeSet::new()).is_empty());
        let k5 = Topology::complete(5).unwrap();
        assert_eq!(lemma1_propagate(&k5, &BTreeSet::from([0])), BTreeSet::from([0]));
    }
}

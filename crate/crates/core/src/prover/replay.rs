//! Independent checker for prover certificates.
//!
//! Leaf patterns are rebuilt from the branch decisions alone and every
//! constraint is re-derived here from its label, so a certificate never
//! depends on the search code being correct.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use super::certificate::{digest, ConstraintRef, Leaf, Outcome, ProofTree, Reason, Weighted};
use super::pattern::Sign;
use crate::equilibrium::is_pne;
use crate::game::{GameSpec, Profile};
use crate::graph::Topology;
use crate::pne_plus::is_pne_plus;
use crate::rational::Rational;
use crate::{PlayerId, Result};

use super::certificate::Certificate;

/// `Ok(true)` when the certificate is bound to this game and every claim in
/// it checks out. Undecided certificates never pass.
pub fn replay_certificate(g: &Topology, spec: &GameSpec, cert: &Certificate) -> Result<bool> {
    spec.validate()?;
    if cert.digest != digest(g, spec) {
        return Ok(false);
    }
    Ok(match &cert.outcome {
        Outcome::Witness(s) => check_witness(g, spec, s),
        Outcome::Empty(tree) => check_tree(g, spec, tree),
        Outcome::Undecided(_) => false,
    })
}

fn check_witness(g: &Topology, spec: &GameSpec, s: &Profile) -> bool {
    if s.validate(g, spec).is_err() {
        return false;
    }
    let pne = is_pne(g, spec, s).map(|r| r.is_equilibrium()).unwrap_or(false);
    pne && is_pne_plus(g, spec, s).map(|v| v.member).unwrap_or(false)
}

fn check_tree(g: &Topology, spec: &GameSpec, tree: &ProofTree) -> bool {
    let n = g.n();
    let degrees = g.degrees();
    let mut stack: Vec<(&ProofTree, Vec<Sign>)> = vec![(tree, vec![Sign::Unknown; n])];
    while let Some((t, decisions)) = stack.pop() {
        match t {
            ProofTree::Node(b) => {
                let i = b.player;
                if i >= n || decisions[i] != Sign::Unknown {
                    return false;
                }
                let mut zero = decisions.clone();
                zero[i] = Sign::Zero;
                let mut pos = decisions;
                pos[i] = Sign::Pos;
                stack.push((&b.children.pos, pos));
                stack.push((&b.children.zero, zero));
            }
            ProofTree::Leaf(leaf) => {
                let pattern = closure(&degrees, decisions);
                if !check_leaf(g, spec, &degrees, &pattern, leaf) {
                    return false;
                }
            }
        }
    }
    true
}

/// Decisions plus the zeros forced by the lowest-degree zero decision.
/// Positive decisions are kept even when they contradict the forcing.
fn closure(degrees: &[usize], mut signs: Vec<Sign>) -> Vec<Sign> {
    let floor = signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Sign::Zero)
        .map(|(i, _)| degrees[i])
        .min();
    if let Some(floor) = floor {
        for (i, s) in signs.iter_mut().enumerate() {
            if degrees[i] > floor && *s == Sign::Unknown {
                *s = Sign::Zero;
            }
        }
    }
    signs
}

fn check_leaf(
    g: &Topology,
    spec: &GameSpec,
    degrees: &[usize],
    pattern: &[Sign],
    leaf: &Leaf,
) -> bool {
    let n = g.n();
    if leaf.players.iter().any(|&i| i >= n) {
        return false;
    }
    match leaf.reason {
        Reason::Lemma1Conflict => match leaf.players[..] {
            [u, v] => {
                pattern[u] == Sign::Zero && pattern[v] == Sign::Pos && degrees[u] < degrees[v]
            }
            _ => false,
        },
        Reason::InactiveNeighborhoodAllZero => match leaf.players[..] {
            [i] => {
                pattern[i] == Sign::Zero
                    && g.neighbors(i).iter().all(|&j| pattern[j] == Sign::Zero)
            }
            _ => false,
        },
        Reason::LinearInfeasible => check_combination(g, spec, degrees, pattern, &leaf.constraints),
    }
}

enum Kind {
    Equality,
    Weak,
    Strict,
}

/// Verifies `sum w_k (a_k . s) ⋈ sum w_k b_k` collapses to a false
/// statement about constants.
fn check_combination(
    g: &Topology,
    spec: &GameSpec,
    degrees: &[usize],
    pattern: &[Sign],
    constraints: &[Weighted],
) -> bool {
    if constraints.is_empty() {
        return false;
    }
    let mut coeffs: BTreeMap<PlayerId, Rational> = BTreeMap::new();
    let mut b = Rational::zero();
    let mut strict = Rational::zero();
    for w in constraints {
        let Some((terms, kind, rhs)) = form(g, spec, degrees, pattern, &w.constraint) else {
            return false;
        };
        match kind {
            Kind::Equality => {}
            Kind::Weak | Kind::Strict if w.weight.is_negative() => return false,
            Kind::Weak => {}
            Kind::Strict => strict += &w.weight,
        }
        for (i, a) in terms {
            *coeffs.entry(i).or_insert_with(Rational::zero) += a * &w.weight;
        }
        b += rhs * &w.weight;
    }
    if coeffs.values().any(|c| !c.is_zero()) {
        return false;
    }
    b.is_positive() || (b.is_zero() && strict.is_positive())
}

fn form(
    g: &Topology,
    spec: &GameSpec,
    degrees: &[usize],
    pattern: &[Sign],
    c: &ConstraintRef,
) -> Option<(Vec<(PlayerId, Rational)>, Kind, Rational)> {
    let n = g.n();
    let live = |i: PlayerId| pattern[i] != Sign::Zero;
    let neighborhood = |i: PlayerId, closed: bool| -> Vec<(PlayerId, Rational)> {
        let mut v: Vec<(PlayerId, Rational)> = g
            .neighbors(i)
            .iter()
            .filter(|&&j| live(j))
            .map(|&j| (j, Rational::from_integer(1.into())))
            .collect();
        if closed {
            v.push((i, Rational::from_integer(1.into())));
        }
        v
    };
    let unit = |i: PlayerId, a: i64| vec![(i, Rational::from_integer(a.into()))];
    let in_range = |i: PlayerId| i < n;
    Some(match *c {
        ConstraintRef::Active { player: i } if in_range(i) && pattern[i] == Sign::Pos => {
            (neighborhood(i, true), Kind::Equality, spec.delta.clone())
        }
        ConstraintRef::Inactive { player: i } if in_range(i) && pattern[i] == Sign::Zero => {
            (neighborhood(i, false), Kind::Weak, spec.delta.clone())
        }
        ConstraintRef::Exposure { player: i } if in_range(i) && live(i) => {
            (neighborhood(i, true), Kind::Weak, spec.delta.clone())
        }
        ConstraintRef::Positive { player: i } if in_range(i) && pattern[i] == Sign::Pos => {
            (unit(i, 1), Kind::Strict, Rational::zero())
        }
        ConstraintRef::NonNegative { player: i } if in_range(i) && live(i) => {
            (unit(i, 1), Kind::Weak, Rational::zero())
        }
        ConstraintRef::Cap { player: i } if in_range(i) && live(i) => {
            (unit(i, -1), Kind::Weak, -spec.s_max.clone())
        }
        ConstraintRef::Order { higher: h, lower: l }
            if in_range(h) && in_range(l) && live(h) && live(l) && degrees[h] > degrees[l] =>
        {
            let mut t = unit(l, 1);
            t.extend(unit(h, -1));
            (t, Kind::Weak, Rational::zero())
        }
        ConstraintRef::ExposureOrder { higher: h, lower: l }
            if in_range(h)
                && in_range(l)
                && pattern[h] == Sign::Zero
                && pattern[l] == Sign::Zero
                && degrees[h] > degrees[l] =>
        {
            let mut t = neighborhood(h, false);
            t.extend(neighborhood(l, false).into_iter().map(|(j, a)| (j, -a)));
            (t, Kind::Weak, Rational::zero())
        }
        _ => return None,
    })
}

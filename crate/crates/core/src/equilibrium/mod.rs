//! Equilibrium verification, best responses and best-response dynamics.
//!
//! A profile is a pure Nash equilibrium exactly when every player's effort
//! equals `max(0, delta - neighbor_sum)`: a player whose neighbors already
//! supply `delta` free-rides, anyone else tops its exposure up to `delta`.

mod active_set;

pub use active_set::{
    enumerate_pne, solve_active_set, ActiveSet, EquilibriumSolution, DEFAULT_N_LIMIT,
};

use num::{Signed, Zero};

use crate::game::{neighbor_sum, GameSpec, Profile};
use crate::graph::Topology;
use crate::rational::Rational;
use crate::{PlayerId, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub player: PlayerId,
    pub neighbor_sum: Rational,
    pub played: Rational,
    pub required: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PneReport {
    pub violations: Vec<Violation>,
}

impl PneReport {
    pub fn is_equilibrium(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact best-response check for every player.
pub fn is_pne(g: &Topology, spec: &GameSpec, s: &Profile) -> Result<PneReport> {
    s.validate(g, spec)?;
    let violations = (0..g.n())
        .filter_map(|i| {
            let sum = neighbor_sum(g, s, i);
            let required = required_effort(spec, &sum);
            (s.get(i) != &required).then(|| Violation {
                player: i,
                neighbor_sum: sum,
                played: s.get(i).clone(),
                required,
            })
        })
        .collect();
    Ok(PneReport { violations })
}

fn required_effort(spec: &GameSpec, neighbor_sum: &Rational) -> Rational {
    if neighbor_sum < &spec.delta {
        (&spec.delta - neighbor_sum).min(spec.s_max.clone())
    } else {
        Rational::zero()
    }
}

/// `max(0, delta - neighbor_sum)`, clamped to `[0, s_max]`.
pub fn best_response(g: &Topology, spec: &GameSpec, s: &Profile, i: PlayerId) -> Rational {
    required_effort(spec, &neighbor_sum(g, s, i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Everyone responds to the previous profile at once.
    Synchronous,
    /// Players respond one at a time in id order, seeing earlier updates.
    RoundRobin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsOutcome {
    pub profile: Profile,
    pub converged: bool,
    /// Largest absolute change per sweep.
    pub trace: Vec<Rational>,
}

/// Iterates best responses until a sweep changes nothing or `max_iters`
/// sweeps have run. A heuristic equilibrium finder; it need not converge.
pub fn br_dynamics(
    g: &Topology,
    spec: &GameSpec,
    s0: &Profile,
    schedule: Schedule,
    max_iters: usize,
) -> Result<DynamicsOutcome> {
    s0.validate(g, spec)?;
    let mut s = s0.clone();
    let mut trace = Vec::new();
    for _ in 0..max_iters {
        let mut max_change = Rational::zero();
        match schedule {
            Schedule::Synchronous => {
                let next: Vec<Rational> = (0..g.n()).map(|i| best_response(g, spec, &s, i)).collect();
                for (old, new) in s.0.iter_mut().zip(next) {
                    max_change = max_change.max((&new - &*old).abs());
                    *old = new;
                }
            }
            Schedule::RoundRobin => {
                for i in 0..g.n() {
                    let new = best_response(g, spec, &s, i);
                    max_change = max_change.max((&new - s.get(i)).abs());
                    s.0[i] = new;
                }
            }
        }
        let done = max_change.is_zero();
        trace.push(max_change);
        if done {
            return Ok(DynamicsOutcome {
                profile: s,
                converged: true,
                trace,
            });
        }
    }
    Ok(DynamicsOutcome {
        profile: s,
        converged: false,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p3() -> Topology {
        Topology::path(3).unwrap()
    }

    #[test]
    fn is_pne_examples() {
        let spec = GameSpec::unit();
        let s = Profile::from_ratios(&[(0, 1), (1, 1), (0, 1)]);
        assert!(is_pne(&p3(), &spec, &s).unwrap().is_equilibrium());
        let s = Profile::from_ratios(&[(1, 1), (0, 1), (1, 1)]);
        assert!(is_pne(&p3(), &spec, &s).unwrap().is_equilibrium());
        let s = Profile::from_ratios(&[(1, 2), (1, 2), (0, 1)]);
        let report = is_pne(&p3(), &spec, &s).unwrap();
        assert_eq!(
            report.violations,
            vec![Violation {
                player: 2,
                neighbor_sum: ratio(1, 2),
                played: int(0),
                required: ratio(1, 2),
            }]
        );
    }

    #[test]
    fn boundary_sum_equal_to_delta_means_inactive() {
        let spec = GameSpec::unit();
        let k2 = Topology::path(2).unwrap();
        let s = Profile::from_ratios(&[(1, 1), (0, 1)]);
        assert!(is_pne(&k2, &spec, &s).unwrap().is_equilibrium());
    }

    #[test]
    fn best_response_examples() {
        let spec = GameSpec::unit();
        let star = Topology::star(2).unwrap();
        for (sum, expected) in [((0, 1), int(1)), ((3, 2), int(0)), ((1, 4), ratio(3, 4))] {
            // leaf 1 sees only the center
            let s = Profile(vec![ratio(sum.0, sum.1), int(0), int(0)]);
            assert_eq!(best_response(&star, &spec, &s, 1), expected);
        }
    }

    #[test]
    fn round_robin_on_path() {
        let spec = GameSpec::unit();
        let out = br_dynamics(&p3(), &spec, &Profile::zeros(3), Schedule::RoundRobin, 10).unwrap();
        assert!(out.converged);
        assert_eq!(out.profile, Profile::from_ratios(&[(1, 1), (0, 1), (1, 1)]));
        assert_eq!(out.trace, vec![int(1), int(0)]);
    }

    #[test]
    fn synchronous_oscillates_on_k2() {
        let spec = GameSpec::unit();
        let k2 = Topology::complete(2).unwrap();
        let out = br_dynamics(&k2, &spec, &Profile::zeros(2), Schedule::Synchronous, 7).unwrap();
        assert!(!out.converged);
        assert_eq!(out.trace.len(), 7);
        assert!(out.trace.iter().all(|c| *c == int(1)));
        assert_eq!(out.profile, Profile::from_ratios(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn equilibrium_is_a_fixed_point() {
        let spec = GameSpec::unit();
        let s = Profile::from_ratios(&[(0, 1), (1, 1), (0, 1)]);
        for schedule in [Schedule::Synchronous, Schedule::RoundRobin] {
            let out = br_dynamics(&p3(), &spec, &s, schedule, 5).unwrap();
            assert!(out.converged);
            assert_eq!(out.profile, s);
            assert_eq!(out.trace.len(), 1);
        }
    }
}

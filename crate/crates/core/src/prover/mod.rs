//! Decides whether a game admits an equilibrium where higher degree never
//! earns less, by case splitting on player signs.
//!
//! The search assigns each player zero or positive effort, propagates the
//! forced consequences, and closes a case as soon as it is contradictory.
//! A fully assigned pattern is settled by an exact linear feasibility test:
//! a feasible point is a witness, an infeasible one yields nonnegative
//! multipliers that replay checks without solving anything.

mod certificate;
mod pattern;
mod replay;
mod system;

use std::time::{Duration, Instant};

use num::One;

pub use certificate::{
    digest, Branch, Certificate, Children, ConstraintRef, Leaf, Outcome, ProofTree, Reason,
    SearchStats, Weighted,
};
pub use pattern::{propagate, Conflict, Sign, SignPattern};
pub use replay::replay_certificate;

use crate::equilibrium::is_pne;
use crate::game::{GameSpec, Profile};
use crate::graph::Topology;
use crate::pne_plus::is_pne_plus;
use crate::rational::Rational;
use system::{Feasibility, System};

#[derive(Clone, Debug)]
pub struct ProverConfig {
    /// Maximum number of search nodes before giving up.
    pub node_budget: usize,
    pub time_budget: Duration,
    /// Run the relaxed feasibility test on partial patterns every this many
    /// branch levels; 0 (the default) disables it.
    pub interior_check_every: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        Self {
            node_budget: 1_000_000,
            time_budget: Duration::from_secs(300),
            interior_check_every: 0,
        }
    }
}

pub fn decide_pne_plus(g: &Topology, spec: &GameSpec) -> Certificate {
    decide_pne_plus_with(g, spec, &ProverConfig::default())
}

enum Step {
    Closed(ProofTree),
    Witness(Profile),
    Split(SignPattern, usize),
}

struct Frame {
    pattern: SignPattern,
    player: usize,
    depth: usize,
    zero: Option<ProofTree>,
}

struct Search<'a> {
    g: &'a Topology,
    spec: &'a GameSpec,
    degrees: Vec<usize>,
    config: &'a ProverConfig,
    stats: SearchStats,
}

impl Search<'_> {
    fn step(&mut self, mut pattern: SignPattern, depth: usize) -> Step {
        self.stats.nodes += 1;
        if let Err(conflict) = propagate(self.g, &self.degrees, &mut pattern) {
            return Step::Closed(conflict_leaf(conflict));
        }
        let full = pattern.is_full();
        let interior = self.config.interior_check_every > 0
            && depth > 0
            && depth % self.config.interior_check_every == 0;
        if full || interior {
            self.stats.lp_checks += 1;
            let system = System::build(self.g, &self.degrees, self.spec, &pattern, full);
            match system.check(self.g.n(), self.spec) {
                Feasibility::Infeasible(constraints) => {
                    return Step::Closed(linear_leaf(constraints));
                }
                Feasibility::Feasible(profile) if full => {
                    let pne = is_pne(self.g, self.spec, &profile)
                        .map(|r| r.is_equilibrium())
                        .unwrap_or(false);
                    let plus = is_pne_plus(self.g, self.spec, &profile)
                        .map(|v| v.member)
                        .unwrap_or(false);
                    assert!(pne && plus, "feasible full pattern must give a qualifying equilibrium");
                    return Step::Witness(profile);
                }
                Feasibility::Feasible(_) => {}
            }
        }
        match pattern.branch_player(&self.degrees) {
            Some(player) => Step::Split(pattern, player),
            None => unreachable!("full patterns are settled above"),
        }
    }

    fn out_of_budget(&self, started: Instant) -> Option<String> {
        if self.stats.nodes >= self.config.node_budget {
            Some(format!("node budget of {} exhausted", self.config.node_budget))
        } else if started.elapsed() >= self.config.time_budget {
            Some(format!(
                "time budget of {}s exhausted",
                self.config.time_budget.as_secs_f64()
            ))
        } else {
            None
        }
    }
}

pub fn decide_pne_plus_with(g: &Topology, spec: &GameSpec, config: &ProverConfig) -> Certificate {
    let started = Instant::now();
    let mut search = Search {
        g,
        spec,
        degrees: g.degrees(),
        config,
        stats: SearchStats::default(),
    };
    let outcome = run(&mut search, started);
    Certificate {
        digest: digest(g, spec),
        outcome,
        stats: search.stats,
    }
}

fn run(search: &mut Search<'_>, started: Instant) -> Outcome {
    let mut stack: Vec<Frame> = Vec::new();
    let mut done = match search.step(SignPattern::unknown(search.g.n()), 0) {
        Step::Closed(t) => return Outcome::Empty(t),
        Step::Witness(p) => return Outcome::Witness(p),
        Step::Split(pattern, player) => {
            stack.push(Frame { pattern, player, depth: 0, zero: None });
            None
        }
    };
    loop {
        if let Some(tree) = done.take() {
            let Some(top) = stack.last_mut() else {
                return Outcome::Empty(tree);
            };
            if top.zero.is_none() {
                top.zero = Some(tree);
            } else {
                let f = stack.pop().expect("non-empty stack");
                done = Some(ProofTree::node(f.player, f.zero.expect("zero child"), tree));
                continue;
            }
        }
        if let Some(reason) = search.out_of_budget(started) {
            return Outcome::Undecided(reason);
        }
        let top = stack.last().expect("search stack is non-empty");
        let sign = if top.zero.is_none() { Sign::Zero } else { Sign::Pos };
        let mut child = top.pattern.clone();
        child.set(top.player, sign);
        let depth = top.depth + 1;
        match search.step(child, depth) {
            Step::Closed(t) => done = Some(t),
            Step::Witness(p) => return Outcome::Witness(p),
            Step::Split(pattern, player) => stack.push(Frame { pattern, player, depth, zero: None }),
        }
    }
}

fn conflict_leaf(conflict: Conflict) -> ProofTree {
    match conflict {
        Conflict::Lemma1 { zero, pos } => ProofTree::Leaf(Leaf {
            reason: Reason::Lemma1Conflict,
            players: vec![zero, pos],
            constraints: Vec::new(),
        }),
        Conflict::AllZero { player } => ProofTree::Leaf(Leaf {
            reason: Reason::InactiveNeighborhoodAllZero,
            players: vec![player],
            constraints: Vec::new(),
        }),
        Conflict::Overfull { player, anchor, pos_extra, unknown_extra } => {
            let one = Rational::one();
            let mut constraints = vec![
                Weighted { constraint: ConstraintRef::Active { player: anchor }, weight: one.clone() },
                Weighted { constraint: ConstraintRef::Active { player }, weight: -one.clone() },
            ];
            constraints.extend(pos_extra.into_iter().map(|k| Weighted {
                constraint: ConstraintRef::Positive { player: k },
                weight: one.clone(),
            }));
            constraints.extend(unknown_extra.into_iter().map(|k| Weighted {
                constraint: ConstraintRef::NonNegative { player: k },
                weight: one.clone(),
            }));
            linear_leaf(constraints)
        }
    }
}

fn linear_leaf(constraints: Vec<Weighted>) -> ProofTree {
    let mut players: Vec<usize> = constraints
        .iter()
        .flat_map(|w| match w.constraint {
            ConstraintRef::Order { higher, lower } | ConstraintRef::ExposureOrder { higher, lower } => {
                vec![higher, lower]
            }
            ConstraintRef::Active { player }
            | ConstraintRef::Inactive { player }
            | ConstraintRef::Exposure { player }
            | ConstraintRef::Positive { player }
            | ConstraintRef::NonNegative { player }
            | ConstraintRef::Cap { player } => vec![player],
        })
        .collect();
    players.sort_unstable();
    players.dedup();
    ProofTree::Leaf(Leaf {
        reason: Reason::LinearInfeasible,
        players,
        constraints,
    })
}

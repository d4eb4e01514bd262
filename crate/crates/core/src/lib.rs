//! Exact solver and emptiness prover for the public-goods game on a fixed network.
//!
//! Every player picks an effort `s_i >= 0`; its payoff is
//! `f(s_i + sum of neighbor efforts) - c * s_i` for a concave increasing `f`
//! with `f'(delta) = c`. The crate verifies and enumerates pure Nash
//! equilibria exactly, classifies them against the "higher degree earns at
//! least as much" property, and decides whether any equilibrium has that
//! property, producing either a witness profile or a replayable proof tree.
//!
//! All equilibrium and classification logic runs on exact rationals; `f` is
//! evaluated in floating point only for payoff display and numeric
//! cross-checks.

pub mod equilibrium;
pub mod game;
pub mod graph;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod pne_plus;
pub mod prover;
pub mod rational;

pub use equilibrium::{
    best_response, br_dynamics, enumerate_pne, is_pne, solve_active_set, ActiveSet,
    DynamicsOutcome, EquilibriumSolution, PneReport, Schedule, DEFAULT_N_LIMIT,
};
pub use game::{ordinal_compare, payoff, payoff_report, Benefit, GameSpec, PayoffReport, Profile};
pub use graph::{gen_goyal_tree, GoyalTree, Topology, TreeFamilyParams};
pub use pne_plus::{is_pne_plus, lemma1_propagate, PnePlusVerdict};
pub use prover::{
    decide_pne_plus, decide_pne_plus_with, replay_certificate, Certificate, ProverConfig,
};
pub use rational::Rational;

pub type PlayerId = usize;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("player {player} out of range for {n} players")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("self-loop on player {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("topology needs at least one player")]
    EmptyTopology,
    #[error("invalid tree parameters: {0}")]
    InvalidTreeParams(String),
    #[error("invalid game spec: {0}")]
    InvalidSpec(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("profile is not a pure Nash equilibrium")]
    NotEquilibrium,
    #[error("{n} players exceed the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

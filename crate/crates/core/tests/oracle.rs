mod common;

use netgood::oracle::corpus::{self, manifest_json};
use netgood::oracle::fm::{decide, FmResult, Rel, Row};
use netgood::oracle::{numeric_br_check_default, oracle_enumerate, oracle_pne_plus_exists, Status};
use netgood::rational::int;
use netgood::{enumerate_pne, gen_goyal_tree, Topology, TreeFamilyParams, DEFAULT_N_LIMIT};
use proptest::prelude::*;

use common::{graph, unit};

#[test]
fn manifest_is_frozen() {
    let text = include_str!("data/corpus_manifest.json");
    assert_eq!(manifest_json(&corpus::corpus()), text);
    let parsed: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 25 + corpus::RANDOM_GRAPHS);
}

#[test]
fn unique_solutions_pass_grid_check() {
    for e in corpus::corpus().iter().step_by(3) {
        for r in oracle_enumerate(&e.topology, &unit()).unwrap() {
            if r.status == Status::Feasible {
                let s = r.profile.expect("unique support pins a profile");
                assert!(numeric_br_check_default(&e.topology, &unit(), &s), "{}", e.name);
            }
        }
    }
}

#[test]
fn report_json_shape() {
    let recs = oracle_enumerate(&Topology::path(3).unwrap(), &unit()).unwrap();
    let json = serde_json::to_string(&recs[2]).unwrap();
    assert_eq!(json, r#"{"active_set":[1],"status":"feasible","kernel_dim":0,"profile":["0/1","1/1","0/1"]}"#);
    let json = serde_json::to_string(&recs[0]).unwrap();
    assert_eq!(json, r#"{"active_set":[],"status":"infeasible","kernel_dim":0}"#);
}

#[test]
fn mini_tree_has_no_monotone_equilibrium() {
    // depth-4 member small enough for exhaustive elimination
    let g = gen_goyal_tree(&TreeFamilyParams::new(vec![1, 3, 4])).unwrap().topology;
    assert_eq!(g.n(), 10);
    let exists = oracle_pne_plus_exists(&g, &unit()).unwrap();
    assert_eq!(exists, netgood::decide_pne_plus(&g, &unit()).is_witness());
}

#[test]
fn elimination_handles_redundant_equalities() {
    let row = |c: &[i64], rel, rhs| Row { coeffs: c.iter().map(|&v| int(v)).collect(), rel, rhs: int(rhs) };
    let r = decide(
        2,
        vec![row(&[1, 1], Rel::Eq, 2), row(&[2, 2], Rel::Eq, 4), row(&[1, 0], Rel::Gt, 0), row(&[0, 1], Rel::Ge, 2)],
    );
    assert_eq!(r, FmResult::Infeasible);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_matches_engine(g in graph(6)) {
        let mut oracle: Vec<_> = oracle_enumerate(&g, &unit())
            .unwrap()
            .into_iter()
            .filter(|r| r.status != Status::Infeasible)
            .map(|r| (r.active_set, r.kernel_dim))
            .collect();
        oracle.sort();
        let engine: Vec<_> = enumerate_pne(&g, &unit(), DEFAULT_N_LIMIT)
            .unwrap()
            .into_iter()
            .map(|s| (s.active_set, s.kernel_dim))
            .collect();
        prop_assert_eq!(oracle, engine);
    }
}

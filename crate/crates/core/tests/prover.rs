mod common;

use std::collections::BTreeSet;

use netgood::oracle::oracle_pne_plus_exists;
use netgood::prover::{ConstraintRef, Outcome, ProofTree, Reason};
use netgood::rational::int;
use netgood::{
    decide_pne_plus, decide_pne_plus_with, enumerate_pne, gen_goyal_tree, is_pne_plus,
    lemma1_propagate, replay_certificate, Certificate, ProverConfig, Topology, TreeFamilyParams,
    DEFAULT_N_LIMIT,
};
use proptest::prelude::*;

use common::{connected_graph, sqrt, unit};

fn canonical() -> Topology {
    gen_goyal_tree(&TreeFamilyParams::canonical()).unwrap().topology
}

#[test]
fn canonical_root_case() {
    let g = canonical();
    let cert = decide_pne_plus(&g, &unit());
    let Some(ProofTree::Node(root)) = cert.proof_tree() else {
        panic!("expected a proof tree, got {}", cert.verdict_name());
    };
    assert_eq!(root.player, 0);
    assert_eq!(g.neighbors(0).len(), 1);
    let ProofTree::Leaf(leaf) = root.children.zero.as_ref() else {
        panic!("zero child should close immediately");
    };
    assert_eq!(leaf.reason, Reason::InactiveNeighborhoodAllZero);
    assert_eq!(leaf.players, vec![0]);
    // the zero at the root forces its neighbor and the next level to zero
    let closure = lemma1_propagate(&g, &BTreeSet::from([0]));
    assert!([1, 2, 3].iter().all(|v| closure.contains(v)));
}

#[test]
fn certificates_are_deterministic() {
    let g = canonical();
    let a = decide_pne_plus(&g, &unit()).to_json();
    let b = decide_pne_plus(&g, &unit()).to_json();
    assert_eq!(a, b);
    let back = Certificate::from_json(&a).unwrap();
    assert_eq!(back.to_json(), a);
    assert!(replay_certificate(&g, &unit(), &back).unwrap());
}

#[test]
fn tampered_certificates_fail() {
    let g = gen_goyal_tree(&TreeFamilyParams::new(vec![1, 3, 4, 5])).unwrap().topology;
    let cert = decide_pne_plus(&g, &unit());
    assert!(cert.is_empty_proof());
    assert!(replay_certificate(&g, &unit(), &cert).unwrap());

    // wrong game
    assert!(!replay_certificate(&g, &unit().with_s_max(int(3)).unwrap(), &cert).unwrap());
    let other = g.extended(1, [(0, g.n())]).unwrap();
    assert!(!replay_certificate(&other, &unit(), &cert).unwrap());

    // flip a multiplier sign
    let mut bad = cert.clone();
    let Outcome::Empty(tree) = &mut bad.outcome else { unreachable!() };
    let leaf = first_linear_leaf(tree).expect("a linear leaf");
    leaf.constraints[0].weight = -leaf.constraints[0].weight.clone();
    assert!(!replay_certificate(&g, &unit(), &bad).unwrap());

    // relabel a constraint
    let mut bad = cert.clone();
    let Outcome::Empty(tree) = &mut bad.outcome else { unreachable!() };
    let leaf = first_linear_leaf(tree).unwrap();
    leaf.constraints[0].constraint = ConstraintRef::Cap { player: 0 };
    assert!(!replay_certificate(&g, &unit(), &bad).unwrap());

    // change a leaf reason
    let mut bad = cert.clone();
    let Outcome::Empty(ProofTree::Node(root)) = &mut bad.outcome else { unreachable!() };
    let ProofTree::Leaf(leaf) = root.children.zero.as_mut() else { unreachable!() };
    leaf.reason = Reason::Lemma1Conflict;
    assert!(!replay_certificate(&g, &unit(), &bad).unwrap());

    // drop a subtree
    let mut bad = cert.clone();
    let Outcome::Empty(ProofTree::Node(root)) = &mut bad.outcome else { unreachable!() };
    *root.children.pos = ProofTree::Leaf(netgood::prover::Leaf {
        reason: Reason::InactiveNeighborhoodAllZero,
        players: vec![0],
        constraints: Vec::new(),
    });
    assert!(!replay_certificate(&g, &unit(), &bad).unwrap());

    // forged witness
    let star = Topology::star(4).unwrap();
    let mut bad = decide_pne_plus(&star, &unit());
    bad.outcome = Outcome::Witness(netgood::Profile::indicator(5, &[0], &int(1)));
    assert!(!replay_certificate(&star, &unit(), &bad).unwrap());

    // edited JSON text
    let text = cert.to_json().replacen("\"1/1\"", "\"1/2\"", 1);
    let edited = Certificate::from_json(&text).unwrap();
    assert!(!replay_certificate(&g, &unit(), &edited).unwrap());
    assert!(Certificate::from_json("{\"verdict\":\"empty\"}").is_err());
}

fn first_linear_leaf(tree: &mut ProofTree) -> Option<&mut netgood::prover::Leaf> {
    match tree {
        ProofTree::Leaf(l) if l.reason == Reason::LinearInfeasible => Some(l),
        ProofTree::Leaf(_) => None,
        ProofTree::Node(b) => {
            let (zero, pos) = (&mut b.children.zero, &mut b.children.pos);
            first_linear_leaf(zero).or_else(|| first_linear_leaf(pos))
        }
    }
}

#[test]
fn undecided_when_budget_runs_out() {
    let config = ProverConfig { node_budget: 5, ..Default::default() };
    let cert = decide_pne_plus_with(&canonical(), &unit(), &config);
    assert!(cert.is_undecided());
    assert!(!replay_certificate(&canonical(), &unit(), &cert).unwrap());
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert!(back.is_undecided());
}

#[test]
fn witness_profiles_for_known_families() {
    for k in 2..=6 {
        let g = Topology::star(k).unwrap();
        let cert = decide_pne_plus(&g, &unit());
        let leaves: Vec<usize> = (1..=k).collect();
        assert_eq!(cert.witness(), Some(&netgood::Profile::indicator(k + 1, &leaves, &int(1))));
    }
    let wide = unit().with_s_max(int(5)).unwrap();
    let g = Topology::complete(3).unwrap();
    let w = decide_pne_plus(&g, &wide).witness().cloned().unwrap();
    assert!(is_pne_plus(&g, &wide, &w).unwrap().member);
}

#[test]
fn interior_checks_do_not_change_verdicts() {
    let g = gen_goyal_tree(&TreeFamilyParams::new(vec![1, 3, 4, 5])).unwrap().topology;
    for k in [1, 2, 4] {
        let config = ProverConfig { interior_check_every: k, ..Default::default() };
        let cert = decide_pne_plus_with(&g, &unit(), &config);
        assert!(cert.is_empty_proof());
        assert!(replay_certificate(&g, &unit(), &cert).unwrap());
    }
}

#[test]
fn lemma1_holds_on_members() {
    for e in common::corpus() {
        let g = &e.topology;
        for sol in enumerate_pne(g, &unit(), DEFAULT_N_LIMIT).unwrap() {
            if !is_pne_plus(g, &unit(), &sol.profile).unwrap().member {
                continue;
            }
            let zeros: BTreeSet<usize> = (0..g.n()).filter(|&i| !sol.profile.is_active(i)).collect();
            let closure = lemma1_propagate(g, &zeros);
            assert!(closure.iter().all(|&i| !sol.profile.is_active(i)), "{}", e.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prover_agrees_with_oracle(g in connected_graph(7), interior in 0usize..3) {
        let config = ProverConfig { interior_check_every: interior, ..Default::default() };
        let cert = decide_pne_plus_with(&g, &unit(), &config);
        prop_assert!(!cert.is_undecided());
        prop_assert!(replay_certificate(&g, &unit(), &cert).unwrap());
        prop_assert_eq!(cert.is_witness(), oracle_pne_plus_exists(&g, &unit()).unwrap());
        if let Some(w) = cert.witness() {
            prop_assert!(is_pne_plus(&g, &unit(), w).unwrap().member);
        }
    }

    #[test]
    fn verdicts_ignore_benefit(g in connected_graph(7)) {
        let a = decide_pne_plus(&g, &unit());
        let b = decide_pne_plus(&g, &sqrt());
        prop_assert_eq!(a.verdict_name(), b.verdict_name());
        for sol in enumerate_pne(&g, &unit(), DEFAULT_N_LIMIT).unwrap() {
            prop_assert_eq!(
                is_pne_plus(&g, &unit(), &sol.profile).unwrap(),
                is_pne_plus(&g, &sqrt(), &sol.profile).unwrap()
            );
        }
    }

    #[test]
    fn leaf_extensions_stay_empty(seed in 0u64..1000) {
        let tree = gen_goyal_tree(&TreeFamilyParams::new(vec![1, 3, 4, 5])).unwrap();
        let g = tree.with_leaf_extensions(seed, 6).unwrap();
        let cert = decide_pne_plus(&g, &unit());
        prop_assert!(cert.is_empty_proof());
        prop_assert!(replay_certificate(&g, &unit(), &cert).unwrap());
    }
}

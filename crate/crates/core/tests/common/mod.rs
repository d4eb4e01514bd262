#![allow(dead_code)]

use netgood::oracle::corpus::{self, CorpusEntry};
use netgood::{Benefit, GameSpec, Topology};
use proptest::prelude::*;

pub fn unit() -> GameSpec {
    GameSpec::unit()
}

pub fn sqrt() -> GameSpec {
    GameSpec::unit().with_benefit(Benefit::Sqrt)
}

pub fn corpus() -> Vec<CorpusEntry> {
    corpus::corpus()
}

/// Graphs on `1..=max_n` players from an edge bitmask.
pub fn graph(max_n: usize) -> impl Strategy<Value = Topology> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges = pairs.iter().zip(mask).filter(|(_, on)| *on).map(|(&e, _)| e);
            Topology::new(n, edges).unwrap()
        })
    })
}

pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Topology> {
    graph(max_n).prop_filter("connected", |g| g.is_connected())
}

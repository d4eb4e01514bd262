//! Fixed test corpus: every tree up to seven nodes, one per isomorphism
//! class, plus seeded random connected graphs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Topology, TopologyJson};
use crate::PlayerId;

pub const CORPUS_SEED: u64 = 0x6e65_7467_6f6f_64;
pub const RANDOM_GRAPHS: usize = 200;
pub const MAX_N: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(flatten)]
    pub graph: TopologyJson,
    #[serde(skip)]
    pub topology: Topology,
}

/// All trees with `1..=max_n` nodes, then `RANDOM_GRAPHS` random connected
/// graphs on `2..=max_n` nodes drawn from `CORPUS_SEED`.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=MAX_N {
        for (k, t) in trees(n).into_iter().enumerate() {
            out.push(entry(format!("tree-{n}-{k}"), t));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for k in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(2..=MAX_N);
        out.push(entry(format!("random-{k}"), random_connected(n, &mut rng)));
    }
    out
}

/// JSON array with one graph per line.
pub fn manifest_json(entries: &[CorpusEntry]) -> String {
    let lines: Vec<String> = entries
        .iter()
        .map(|e| serde_json::to_string(e).expect("corpus entry serializes"))
        .collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

fn entry(name: String, topology: Topology) -> CorpusEntry {
    CorpusEntry {
        name,
        graph: TopologyJson::from(&topology),
        topology,
    }
}

/// Non-isomorphic trees on `n` nodes, decoded from Prüfer sequences and
/// deduplicated by a center-rooted canonical string.
pub fn trees(n: usize) -> Vec<Topology> {
    if n <= 2 {
        return vec![Topology::path(n).expect("n >= 1")];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let edges = prufer_edges(n, &seq);
        let t = Topology::new(n, edges).expect("Prüfer decoding yields a tree");
        if seen.insert(canonical(&t)) {
            out.push(t);
        }
    }
    out
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(PlayerId, PlayerId)> {
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn canonical(t: &Topology) -> String {
    centers(t)
        .into_iter()
        .map(|c| encode(t, c, usize::MAX))
        .min()
        .expect("a tree has a center")
}

fn encode(t: &Topology, v: PlayerId, parent: PlayerId) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| encode(t, u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centers(t: &Topology) -> Vec<PlayerId> {
    let n = t.n();
    let mut degree: Vec<usize> = t.degrees();
    let mut layer: Vec<PlayerId> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in t.neighbors(v) {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
}

fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Topology {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    let p = rng.gen_range(0.1..0.6);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    // relabel so the spanning tree is not always rooted at 0
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    Topology::new(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
        .expect("random graph is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn corpus_is_connected_and_stable() {
        let a = corpus();
        assert_eq!(a.len(), 25 + RANDOM_GRAPHS);
        assert!(a.iter().all(|e| e.topology.is_connected() && e.topology.n() <= MAX_N));
        assert_eq!(manifest_json(&a), manifest_json(&corpus()));
    }
}

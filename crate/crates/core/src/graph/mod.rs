//! Immutable undirected topologies, generators and text formats.

mod generate;
mod io;

pub use generate::{gen_goyal_tree, preset, GoyalTree, TreeFamilyParams};
pub use io::{dump_edge_list, load_edge_list, to_dot, TopologyJson};

use std::collections::VecDeque;

use crate::{Error, PlayerId, Result};

/// Undirected simple graph on players `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Topology {
    adjacency: Vec<Vec<PlayerId>>,
    edge_count: usize,
}

impl Topology {
    /// Builds a topology, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PlayerId, PlayerId)>,
    {
        if n == 0 {
            return Err(Error::EmptyTopology);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for p in [u, v] {
                if p >= n {
                    return Err(Error::PlayerOutOfRange { player: p, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            adjacency,
            edge_count,
        })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list `N_i`. Panics if `i` is out of range.
    pub fn neighbors(&self, i: PlayerId) -> &[PlayerId] {
        &self.adjacency[i]
    }

    /// `|N_i|`, checked.
    pub fn degree(&self, i: PlayerId) -> Result<usize> {
        self.adjacency
            .get(i)
            .map(Vec::len)
            .ok_or(Error::PlayerOutOfRange {
                player: i,
                n: self.n(),
            })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: PlayerId, v: PlayerId) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (PlayerId, PlayerId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n()
    }

    /// Breadth-first layers from `root`; unreachable players are left out.
    pub fn bfs_levels(&self, root: PlayerId) -> Vec<Vec<PlayerId>> {
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        let mut levels = vec![vec![root]];
        loop {
            let mut next = Vec::new();
            for &u in levels.last().expect("at least the root level") {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                return levels;
            }
            next.sort_unstable();
            levels.push(next);
        }
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.n() && self.is_connected()
    }

    /// Returns a copy with extra players and edges appended.
    pub fn extended<I>(&self, extra_players: usize, extra_edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PlayerId, PlayerId)>,
    {
        Self::new(
            self.n() + extra_players,
            self.edges().collect::<Vec<_>>().into_iter().chain(extra_edges),
        )
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Result<Self> {
        Self::new(k + 1, (1..=k).map(|i| (0, i)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// `n` isolated players.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }
}

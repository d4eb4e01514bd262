use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Topology;
use crate::{Error, PlayerId, Result};

/// Shape of a rooted tree whose non-leaf degree grows with the level.
///
/// `level_degrees[k]` is the degree of every node on level `k`; the last
/// level (`depth - 1`) holds the leaves, so `level_degrees.len() == depth - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFamilyParams {
    pub depth: usize,
    pub level_degrees: Vec<usize>,
}

impl TreeFamilyParams {
    pub fn new(level_degrees: Vec<usize>) -> Self {
        Self {
            depth: level_degrees.len() + 1,
            level_degrees,
        }
    }

    /// `[1, 3, 4, 5, 6]`, six levels, 154 players.
    pub fn canonical() -> Self {
        Self::new(vec![1, 3, 4, 5, 6])
    }

    /// Whether the tree is deep enough for the emptiness argument (five or
    /// more levels). Shallower trees are still generated.
    pub fn meets_depth_condition(&self) -> bool {
        self.depth >= 5
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTreeParams(msg));
        if self.depth < 2 {
            return bad(format!("depth {} < 2", self.depth));
        }
        if self.level_degrees.len() + 1 != self.depth {
            return bad(format!(
                "depth {} needs {} level degrees, got {}",
                self.depth,
                self.depth - 1,
                self.level_degrees.len()
            ));
        }
        if let Some(w) = self.level_degrees.windows(2).find(|w| w[0] >= w[1]) {
            return bad(format!(
                "level degrees must be strictly increasing ({} then {})",
                w[0], w[1]
            ));
        }
        if self.level_degrees[0] == 0 {
            return bad("root degree must be at least 1".into());
        }
        if let Some((k, d)) = self
            .level_degrees
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &d)| d < 2)
        {
            return bad(format!("level {k} degree {d} leaves no room for children"));
        }
        Ok(())
    }
}

/// A generated tree together with its level structure.
#[derive(Clone, Debug)]
pub struct GoyalTree {
    pub params: TreeFamilyParams,
    pub topology: Topology,
    /// Player ids per level, breadth-first; `levels[0] == [0]`.
    pub levels: Vec<Vec<PlayerId>>,
}

impl GoyalTree {
    pub fn leaves(&self) -> &[PlayerId] {
        self.levels.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Attaches random subtrees below randomly chosen leaves. New players get
    /// ids after the existing ones. Deterministic for a given seed.
    pub fn with_leaf_extensions(&self, seed: u64, max_attachments: usize) -> Result<Topology> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let leaves = self.leaves();
        let attachments = rng.gen_range(1..=max_attachments.max(1));
        let mut next = self.topology.n();
        let mut edges = Vec::new();
        for _ in 0..attachments {
            let anchor = leaves[rng.gen_range(0..leaves.len())];
            let size = rng.gen_range(1..=6);
            let mut subtree = vec![anchor];
            for _ in 0..size {
                let parent = subtree[rng.gen_range(0..subtree.len())];
                edges.push((parent, next));
                subtree.push(next);
                next += 1;
            }
        }
        self.topology.extended(next - self.topology.n(), edges)
    }
}

/// Builds the tree breadth-first from the root (id 0).
pub fn gen_goyal_tree(params: &TreeFamilyParams) -> Result<GoyalTree> {
    params.validate()?;
    let mut levels: Vec<Vec<PlayerId>> = vec![vec![0]];
    let mut edges = Vec::new();
    let mut next = 1;
    for (k, &degree) in params.level_degrees.iter().enumerate() {
        let children = if k == 0 { degree } else { degree - 1 };
        let mut level = Vec::new();
        for &parent in &levels[k] {
            for _ in 0..children {
                edges.push((parent, next));
                level.push(next);
                next += 1;
            }
        }
        levels.push(level);
    }
    let topology = Topology::new(next, edges)?;
    Ok(GoyalTree {
        params: params.clone(),
        topology,
        levels,
    })
}

/// Named topologies: `goyal-canonical`, `star:k`, `path:n`, `complete:n`,
/// `cycle:n`, `empty:n`, `tree:d1,d2,...`.
pub fn preset(name: &str) -> Result<Topology> {
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    let count = || {
        arg.parse::<usize>()
            .map_err(|_| Error::Parse(format!("preset `{name}` needs a count")))
    };
    match kind {
        "goyal-canonical" => Ok(gen_goyal_tree(&TreeFamilyParams::canonical())?.topology),
        "star" => Topology::star(count()?),
        "path" => Topology::path(count()?),
        "complete" => Topology::complete(count()?),
        "cycle" => Topology::cycle(count()?),
        "empty" => Topology::empty(count()?),
        "tree" => {
            let degrees = arg
                .split(',')
                .map(|d| d.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad level degrees in `{name}`")))?;
            Ok(gen_goyal_tree(&TreeFamilyParams::new(degrees))?.topology)
        }
        _ => Err(Error::Parse(format!("unknown preset `{name}`"))),
    }
}

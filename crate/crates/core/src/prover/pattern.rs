use serde::{Deserialize, Serialize};

use crate::graph::Topology;
use crate::PlayerId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Zero,
    Pos,
    Unknown,
}

/// Partial assignment of players to zero or positive effort.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern {
    signs: Vec<Sign>,
}

impl SignPattern {
    pub fn unknown(n: usize) -> Self {
        Self {
            signs: vec![Sign::Unknown; n],
        }
    }

    pub fn get(&self, i: PlayerId) -> Sign {
        self.signs[i]
    }

    pub fn set(&mut self, i: PlayerId, sign: Sign) {
        self.signs[i] = sign;
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_full(&self) -> bool {
        !self.signs.contains(&Sign::Unknown)
    }

    pub fn players(&self, sign: Sign) -> impl Iterator<Item = PlayerId> + '_ {
        self.signs
            .iter()
            .enumerate()
            .filter(move |(_, &s)| s == sign)
            .map(|(i, _)| i)
    }

    /// Lowest-degree undetermined player, ties by id.
    pub fn branch_player(&self, degrees: &[usize]) -> Option<PlayerId> {
        self.players(Sign::Unknown).min_by_key(|&i| (degrees[i], i))
    }
}

/// Why a pattern admits no qualifying equilibrium.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conflict {
    /// `zero` has lower degree than `pos`.
    Lemma1 { zero: PlayerId, pos: PlayerId },
    /// A zero player whose neighbors are all zero.
    AllZero { player: PlayerId },
    /// Positive `player` and positive neighbor `anchor` with the support of
    /// `anchor`'s closed neighborhood inside `player`'s; the extra members
    /// push `player`'s exposure past `delta`.
    Overfull {
        player: PlayerId,
        anchor: PlayerId,
        pos_extra: Vec<PlayerId>,
        unknown_extra: Vec<PlayerId>,
    },
}

/// Applies the propagation rules in place:
/// * forcing: every player of higher degree than some zero player is zero;
/// * a zero player needs a non-zero neighbor;
/// * two adjacent positive players with nested closed neighborhoods leave
///   no room for anything else in the larger one.
pub fn propagate(
    g: &Topology,
    degrees: &[usize],
    pattern: &mut SignPattern,
) -> Result<(), Conflict> {
    if let Some(anchor) = pattern.players(Sign::Zero).min_by_key(|&u| (degrees[u], u)) {
        let floor = degrees[anchor];
        for v in 0..g.n() {
            if degrees[v] > floor {
                match pattern.get(v) {
                    Sign::Pos => return Err(Conflict::Lemma1 { zero: anchor, pos: v }),
                    Sign::Unknown => pattern.set(v, Sign::Zero),
                    Sign::Zero => {}
                }
            }
        }
    }
    for i in pattern.players(Sign::Zero) {
        if g.neighbors(i).iter().all(|&j| pattern.get(j) == Sign::Zero) {
            return Err(Conflict::AllZero { player: i });
        }
    }
    for i in pattern.players(Sign::Pos) {
        for &j in g.neighbors(i) {
            if pattern.get(j) != Sign::Pos {
                continue;
            }
            let nested = g
                .neighbors(j)
                .iter()
                .all(|&k| k == i || pattern.get(k) == Sign::Zero || g.has_edge(i, k));
            if !nested {
                continue;
            }
            let extra = || {
                g.neighbors(i)
                    .iter()
                    .copied()
                    .filter(move |&k| k != j && !g.has_edge(j, k))
            };
            let pos_extra: Vec<_> = extra().filter(|&k| pattern.get(k) == Sign::Pos).collect();
            if !pos_extra.is_empty() {
                let unknown_extra = extra()
                    .filter(|&k| pattern.get(k) == Sign::Unknown)
                    .collect();
                return Err(Conflict::Overfull {
                    player: i,
                    anchor: j,
                    pos_extra,
                    unknown_extra,
                });
            }
        }
    }
    Ok(())
}

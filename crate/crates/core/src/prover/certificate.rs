use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::game::{GameSpec, Profile};
use crate::graph::{dump_edge_list, Topology};
use crate::rational::{self, Rational};
use crate::{Error, PlayerId, Result};

/// A linear fact that holds at every qualifying equilibrium consistent with
/// a sign pattern. Efforts of zero players are dropped from every sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstraintRef {
    /// Positive player: `s_i + sum_{N_i} s_j = delta`.
    Active { player: PlayerId },
    /// Zero player: `sum_{N_i} s_j >= delta`.
    Inactive { player: PlayerId },
    /// Any player: `s_i + sum_{N_i} s_j >= delta`.
    Exposure { player: PlayerId },
    /// Positive player: `s_i > 0`.
    Positive { player: PlayerId },
    /// Non-zero player: `s_i >= 0`.
    NonNegative { player: PlayerId },
    /// Non-zero player: `s_i <= s_max`.
    Cap { player: PlayerId },
    /// `deg(higher) > deg(lower)`: `s_higher <= s_lower`.
    Order { higher: PlayerId, lower: PlayerId },
    /// Zero players with `deg(higher) > deg(lower)`: `T_higher >= T_lower`.
    ExposureOrder { higher: PlayerId, lower: PlayerId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weighted {
    #[serde(flatten)]
    pub constraint: ConstraintRef,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// A zero player has lower degree than a positive one.
    Lemma1Conflict,
    /// A zero player whose whole neighborhood is zero.
    InactiveNeighborhoodAllZero,
    /// The weighted constraints sum to `0 >= b` with `b > 0`, or to `0 > 0`.
    LinearInfeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaf {
    pub reason: Reason,
    pub players: Vec<PlayerId>,
    #[serde(default)]
    pub constraints: Vec<Weighted>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Children {
    pub zero: Box<ProofTree>,
    pub pos: Box<ProofTree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub player: PlayerId,
    pub children: Children,
}

/// Case split on one player's sign; leaves close their case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofTree {
    #[serde(rename = "node")]
    Node(Branch),
    #[serde(rename = "leaf")]
    Leaf(Leaf),
}

impl ProofTree {
    pub fn node(player: PlayerId, zero: ProofTree, pos: ProofTree) -> Self {
        ProofTree::Node(Branch {
            player,
            children: Children {
                zero: Box::new(zero),
                pos: Box::new(pos),
            },
        })
    }

    pub fn leaf_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                ProofTree::Leaf(_) => count += 1,
                ProofTree::Node(b) => {
                    stack.push(&b.children.zero);
                    stack.push(&b.children.pos);
                }
            }
        }
        count
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                ProofTree::Leaf(l) => out.push(l),
                ProofTree::Node(b) => {
                    stack.push(&b.children.pos);
                    stack.push(&b.children.zero);
                }
            }
        }
        out
    }
}

impl Drop for ProofTree {
    // Deep trees would otherwise be dropped recursively.
    fn drop(&mut self) {
        let mut stack = Vec::new();
        if let ProofTree::Node(b) = self {
            stack.push(std::mem::replace(&mut b.children.zero, Box::new(placeholder())));
            stack.push(std::mem::replace(&mut b.children.pos, Box::new(placeholder())));
        }
        while let Some(mut t) = stack.pop() {
            if let ProofTree::Node(b) = t.as_mut() {
                stack.push(std::mem::replace(&mut b.children.zero, Box::new(placeholder())));
                stack.push(std::mem::replace(&mut b.children.pos, Box::new(placeholder())));
            }
        }
    }
}

fn placeholder() -> ProofTree {
    ProofTree::Leaf(Leaf {
        reason: Reason::LinearInfeasible,
        players: Vec::new(),
        constraints: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Witness(Profile),
    Empty(ProofTree),
    Undecided(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub lp_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Binds the certificate to the topology, `delta` and `s_max`.
    pub digest: String,
    pub outcome: Outcome,
    pub stats: SearchStats,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum VerdictTag {
    Witness,
    Empty,
    Undecided,
}

#[derive(Serialize)]
struct CertificateOut<'a> {
    verdict: VerdictTag,
    digest: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Profile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proof_tree: Option<&'a ProofTree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    stats: SearchStats,
}

#[derive(Deserialize)]
struct CertificateJson {
    verdict: VerdictTag,
    digest: String,
    #[serde(default)]
    witness: Option<Profile>,
    #[serde(default)]
    proof_tree: Option<ProofTree>,
    #[serde(default)]
    reason: Option<String>,
    #[serde(default)]
    stats: SearchStats,
}

impl Certificate {
    pub fn is_witness(&self) -> bool {
        matches!(self.outcome, Outcome::Witness(_))
    }

    pub fn is_empty_proof(&self) -> bool {
        matches!(self.outcome, Outcome::Empty(_))
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self.outcome, Outcome::Undecided(_))
    }

    pub fn verdict_name(&self) -> &'static str {
        match self.outcome {
            Outcome::Witness(_) => "witness",
            Outcome::Empty(_) => "empty",
            Outcome::Undecided(_) => "undecided",
        }
    }

    pub fn witness(&self) -> Option<&Profile> {
        match &self.outcome {
            Outcome::Witness(p) => Some(p),
            _ => None,
        }
    }

    pub fn proof_tree(&self) -> Option<&ProofTree> {
        match &self.outcome {
            Outcome::Empty(t) => Some(t),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        let (verdict, witness, proof_tree, reason) = match &self.outcome {
            Outcome::Witness(p) => (VerdictTag::Witness, Some(p), None, None),
            Outcome::Empty(t) => (VerdictTag::Empty, None, Some(t), None),
            Outcome::Undecided(r) => (VerdictTag::Undecided, None, None, Some(r.as_str())),
        };
        let json = CertificateOut {
            verdict,
            digest: &self.digest,
            witness,
            proof_tree,
            reason,
            stats: self.stats,
        };
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::new(&mut out);
        serde::Serialize::serialize(&json, serde_stacker::Serializer::new(&mut ser))
            .expect("certificate serializes");
        out.push(b'\n');
        String::from_utf8(out).expect("json is utf-8")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let json: CertificateJson =
            serde::Deserialize::deserialize(serde_stacker::Deserializer::new(&mut de))
                .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        de.end()
            .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        let missing = |what: &str| Error::MalformedCertificate(format!("missing {what}"));
        let outcome = match json.verdict {
            VerdictTag::Witness => Outcome::Witness(json.witness.ok_or_else(|| missing("witness"))?),
            VerdictTag::Empty => Outcome::Empty(json.proof_tree.ok_or_else(|| missing("proof_tree"))?),
            VerdictTag::Undecided => Outcome::Undecided(json.reason.unwrap_or_default()),
        };
        Ok(Self {
            digest: json.digest,
            outcome,
            stats: json.stats,
        })
    }
}

/// SHA-256 over the canonical edge list, `delta` and `s_max`. The benefit
/// function and cost do not enter any verdict, so they are left out.
pub fn digest(g: &Topology, spec: &GameSpec) -> String {
    let mut h = Sha256::new();
    h.update(b"netgood-certificate-v1\n");
    h.update(format!("n {}\n", g.n()));
    h.update(dump_edge_list(g));
    h.update(format!(
        "delta {}\ns_max {}\n",
        rational::format(&spec.delta),
        rational::format(&spec.s_max)
    ));
    hex::encode(h.finalize())
}

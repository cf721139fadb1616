use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{connected_components, find_bridges, label_propagation, LinkGraph, DEFAULT_ROUND_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tactic {
    T1,
    T2,
    T3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutlierEvidence {
    ComponentSize(usize),
    Bridge(String, String),
    CommunitySize(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutlierCandidate {
    pub node: String,
    pub tactic: Tactic,
    pub evidence: OutlierEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutlierOptions {
    pub max_keep_frac: f64,
    pub seed: u64,
    pub round_cap: usize,
}

impl Default for OutlierOptions {
    fn default() -> Self {
        OutlierOptions {
            max_keep_frac: 0.5,
            seed: 0,
            round_cap: DEFAULT_ROUND_CAP,
        }
    }
}

/// Runs the three tactics in order, each on what the previous left:
/// T1 drops everything outside the largest component; T2 removes bridges and
/// drops every resulting component but the largest; T3 drops label
/// propagation communities no larger than `max_keep_frac` of the remainder.
/// Only seed nodes are reported, unless the graph has no seeds.
pub fn detect_outliers(g: &LinkGraph, options: &OutlierOptions) -> Vec<OutlierCandidate> {
    assert!(
        options.max_keep_frac > 0.0 && options.max_keep_frac <= 1.0,
        "max_keep_frac must be in (0, 1]"
    );
    let mut out = Vec::new();
    let components = connected_components(g);
    let Some(giant) = components.first() else {
        return out;
    };
    for comp in &components[1..] {
        for &v in comp {
            out.push(OutlierCandidate {
                node: g.name(v).to_string(),
                tactic: Tactic::T1,
                evidence: OutlierEvidence::ComponentSize(comp.len()),
            });
        }
    }

    let kept: BTreeSet<usize> = giant.iter().copied().collect();
    let h = g.induced(&kept, &BTreeSet::new());
    let bridges = find_bridges(&h);
    let cut = h.induced(&(0..h.node_count()).collect(), &bridges);
    let pieces = connected_components(&cut);
    for piece in pieces.iter().skip(1) {
        let members: BTreeSet<usize> = piece.iter().copied().collect();
        let via = bridges
            .iter()
            .find(|(a, b)| members.contains(a) != members.contains(b))
            .map(|&(a, b)| (h.name(a).to_string(), h.name(b).to_string()))
            .unwrap_or_default();
        for &v in piece {
            out.push(OutlierCandidate {
                node: h.name(v).to_string(),
                tactic: Tactic::T2,
                evidence: OutlierEvidence::Bridge(via.0.clone(), via.1.clone()),
            });
        }
    }

    if let Some(core) = pieces.first() {
        let core_set: BTreeSet<usize> = core.iter().copied().collect();
        let r = cut.induced(&core_set, &BTreeSet::new());
        let n = r.node_count();
        let limit = options.max_keep_frac * n as f64;
        for community in label_propagation(&r, options.seed, options.round_cap) {
            if community.len() < n && community.len() as f64 <= limit {
                for &v in &community {
                    out.push(OutlierCandidate {
                        node: r.name(v).to_string(),
                        tactic: Tactic::T3,
                        evidence: OutlierEvidence::CommunitySize(community.len()),
                    });
                }
            }
        }
    }

    if !g.seeds().is_empty() {
        out.retain(|c| g.index_of(&c.node).is_some_and(|i| g.is_seed(i)));
    }
    out.sort_by(|a, b| a.tactic.cmp(&b.tactic).then_with(|| a.node.cmp(&b.node)));
    out
}

/// Candidate counts per tactic.
pub fn tactic_counts(candidates: &[OutlierCandidate]) -> [usize; 3] {
    let mut c = [0; 3];
    for x in candidates {
        c[x.tactic as usize] += 1;
    }
    c
}

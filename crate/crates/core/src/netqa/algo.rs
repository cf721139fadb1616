use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LinkGraph;

pub const DEFAULT_ROUND_CAP: usize = 100;

fn order_partition(mut parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    parts
}

/// Connected components, largest first, ties by least node.
pub fn connected_components(g: &LinkGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        parts.push(comp);
    }
    order_partition(parts)
}

/// Bridges as `(a, b)` with `a < b`, from one iterative depth-first pass
/// tracking discovery times and low links.
pub fn find_bridges(g: &LinkGraph) -> BTreeSet<(usize, usize)> {
    let n = g.node_count();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut bridges = BTreeSet::new();
    let neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        // (node, parent, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(frame) = stack.last_mut() {
            let (v, parent, pos) = *frame;
            if pos < neighbors[v].len() {
                frame.2 += 1;
                let w = neighbors[v][pos];
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.insert((parent.min(v), parent.max(v)));
                    }
                }
            }
        }
    }
    bridges
}

/// Asynchronous label propagation. Each round visits nodes in a fresh
/// seeded permutation; a node takes the most frequent neighbour label,
/// preferring the least label on ties. Stops when a round changes nothing
/// or after `round_cap` rounds. Communities are ordered like components.
pub fn label_propagation(g: &LinkGraph, seed: u64, round_cap: usize) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..round_cap {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            if let Some(best) = plurality_least(g, &labels, v) {
                if best != labels[v] {
                    labels[v] = best;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, l) in labels.into_iter().enumerate() {
        groups.entry(l).or_default().push(v);
    }
    order_partition(groups.into_values().collect())
}

fn plurality_least(g: &LinkGraph, labels: &[usize], v: usize) -> Option<usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &w in g.neighbors(v) {
        *counts.entry(labels[w]).or_default() += 1;
    }
    let max = *counts.values().max()?;
    counts.into_iter().find(|&(_, c)| c == max).map(|(l, _)| l)
}

/// Labels held by the most neighbours of `v`; empty for isolated nodes.
pub fn plurality_labels(g: &LinkGraph, labels: &[usize], v: usize) -> BTreeSet<usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &w in g.neighbors(v) {
        *counts.entry(labels[w]).or_default() += 1;
    }
    let max = counts.values().max().copied().unwrap_or(0);
    counts.into_iter().filter(|&(_, c)| c == max).map(|(l, _)| l).collect()
}

use std::collections::{BTreeMap, BTreeSet};

/// Undirected simple graph over string node ids. Node indices follow the
/// lexicographic order of ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkGraph {
    nodes: Vec<String>,
    adjacency: Vec<BTreeSet<usize>>,
    seeds: BTreeSet<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct LinkGraphBuilder {
    nodes: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    seeds: BTreeSet<String>,
}

impl LinkGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(&mut self, id: impl Into<String>) -> &mut Self {
        self.nodes.insert(id.into());
        self
    }

    pub fn seed(&mut self, id: impl Into<String>) -> &mut Self {
        let id = id.into();
        self.nodes.insert(id.clone());
        self.seeds.insert(id);
        self
    }

    /// Adds an undirected edge; self-loops only add the node.
    pub fn edge(&mut self, a: impl Into<String>, b: impl Into<String>) -> &mut Self {
        let (a, b) = (a.into(), b.into());
        self.nodes.insert(a.clone());
        self.nodes.insert(b.clone());
        if a != b {
            let key = if a < b { (a, b) } else { (b, a) };
            self.edges.insert(key);
        }
        self
    }

    pub fn build(self) -> LinkGraph {
        let nodes: Vec<String> = self.nodes.into_iter().collect();
        let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut adjacency = vec![BTreeSet::new(); nodes.len()];
        for (a, b) in &self.edges {
            let (ia, ib) = (index[a.as_str()], index[b.as_str()]);
            adjacency[ia].insert(ib);
            adjacency[ib].insert(ia);
        }
        let seeds = self.seeds.iter().map(|s| index[s.as_str()]).collect();
        LinkGraph {
            nodes,
            adjacency,
            seeds,
        }
    }
}

impl LinkGraph {
    pub fn from_edges<I, A, B>(edges: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut b = LinkGraphBuilder::new();
        for (x, y) in edges {
            b.edge(x, y);
        }
        b.build()
    }

    /// Reads tab-separated node pairs, one per line; `#` lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self, String> {
        let mut b = LinkGraphBuilder::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            match (cols.next(), cols.next(), cols.next()) {
                (Some(a), Some(b2), None) if !a.trim().is_empty() && !b2.trim().is_empty() => {
                    b.edge(a.trim(), b2.trim());
                }
                _ => return Err(format!("edge list line {}: expected two tab-separated nodes", i + 1)),
            }
        }
        Ok(b.build())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn name(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(id)).ok()
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adjacency[i]
    }

    pub fn seeds(&self) -> &BTreeSet<usize> {
        &self.seeds
    }

    pub fn is_seed(&self, i: usize) -> bool {
        self.seeds.contains(&i)
    }

    /// Edges as ordered index pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
    }

    /// The subgraph on `keep`, minus `drop_edges`.
    pub fn induced(&self, keep: &BTreeSet<usize>, drop_edges: &BTreeSet<(usize, usize)>) -> LinkGraph {
        let mut b = LinkGraphBuilder::new();
        for &i in keep {
            if self.is_seed(i) {
                b.seed(self.name(i));
            } else {
                b.node(self.name(i));
            }
        }
        for (x, y) in self.edges() {
            if keep.contains(&x) && keep.contains(&y) && !drop_edges.contains(&(x, y)) {
                b.edge(self.name(x), self.name(y));
            }
        }
        b.build()
    }
}

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{ClusterSet, UnionFind};
use crate::rdf::{Graph, Iri, Term};
use crate::reporting::{Category, Finding, Severity, Subject};

/// Pairs of distinct internal topics that the sameAs closure makes
/// identical although they sit in different clusters. Pairs are ordered.
pub fn sameas_violations(
    graph: &Graph,
    clusters: &ClusterSet,
    sameas_prop: &Iri,
    internal_prefix: &str,
) -> BTreeSet<(Iri, Iri)> {
    let links = graph.with_predicate(sameas_prop.as_str());
    let mut ids: HashMap<&Iri, usize> = HashMap::new();
    let mut nodes: Vec<&Iri> = Vec::new();
    let mut edges = Vec::new();
    for t in &links {
        let (Some(s), Some(o)) = (t.subject.as_iri(), t.object.as_iri()) else {
            continue;
        };
        let mut pair = [0usize; 2];
        for (slot, node) in pair.iter_mut().zip([s, o]) {
            *slot = *ids.entry(node).or_insert_with(|| {
                nodes.push(node);
                nodes.len() - 1
            });
        }
        edges.push((pair[0], pair[1]));
    }
    let mut uf = UnionFind::new(nodes.len());
    for (a, b) in edges {
        uf.union(a, b);
    }
    let mut classes: BTreeMap<usize, Vec<&Iri>> = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        if n.as_str().starts_with(internal_prefix) {
            classes.entry(uf.find(i)).or_default().push(n);
        }
    }
    let mut out = BTreeSet::new();
    for mut topics in classes.into_values() {
        topics.sort();
        for (i, a) in topics.iter().enumerate() {
            for b in &topics[i + 1..] {
                if !clusters.same_cluster(a, b) {
                    out.insert(((*a).clone(), (*b).clone()));
                }
            }
        }
    }
    out
}

/// One `SameAsViolation` per pair, citing the sameAs statements of both topics.
pub fn sameas_violation_findings(
    graph: &Graph,
    pairs: &BTreeSet<(Iri, Iri)>,
    sameas_prop: &Iri,
    ontology: &str,
) -> Vec<Finding> {
    let p = Term::Iri(sameas_prop.clone());
    pairs
        .iter()
        .map(|(a, b)| {
            let mut evidence = Vec::new();
            for topic in [a, b] {
                let s = Term::Iri(topic.clone());
                evidence.extend(graph.match_pattern(Some(&s), Some(&p), None).iter().map(|t| t.to_owned()));
            }
            Finding {
                category: Category::SameAsViolation,
                severity: Severity::Warning,
                ontology: ontology.to_string(),
                subject: Some(Subject::pair(Term::Iri(a.clone()), Term::Iri(b.clone()))),
                evidence,
                fixable: false,
                suggested_fix: None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::build_clusters;
    use crate::rdf::{GraphBuilder, Triple};

    const EQ: &str = "http://x/eq";
    const SAME: &str = "http://x/same";

    fn graph(equiv: &[(&str, &str)], same: &[(&str, &str)]) -> (Graph, ClusterSet) {
        let mut b = GraphBuilder::new();
        for (p, pairs) in [(EQ, equiv), (SAME, same)] {
            for (s, o) in pairs {
                b.insert(
                    Triple::new(Term::iri(*s).unwrap(), Iri::new(p).unwrap(), Term::iri(*o).unwrap()).unwrap(),
                );
            }
        }
        let g = b.build();
        let cs = build_clusters(&g, &[Iri::new(EQ).unwrap()], None);
        (g, cs)
    }

    fn pairs(equiv: &[(&str, &str)], same: &[(&str, &str)]) -> Vec<(String, String)> {
        let (g, cs) = graph(equiv, same);
        sameas_violations(&g, &cs, &Iri::new(SAME).unwrap(), "http://t/")
            .into_iter()
            .map(|(a, b)| (a.into_string(), b.into_string()))
            .collect()
    }

    #[test]
    fn shared_external_target() {
        assert_eq!(
            pairs(&[], &[("http://t/1", "http://e/x"), ("http://t/2", "http://e/x")]),
            [("http://t/1".to_string(), "http://t/2".to_string())]
        );
    }

    #[test]
    fn distinct_targets_give_nothing() {
        assert!(pairs(&[], &[("http://t/1", "http://e/x"), ("http://t/2", "http://e/y")]).is_empty());
    }

    #[test]
    fn chain_through_externals() {
        let got = pairs(
            &[("http://t/1", "http://t/2")],
            &[
                ("http://t/1", "http://e/1"),
                ("http://e/1", "http://t/2"),
                ("http://t/2", "http://e/2"),
                ("http://e/2", "http://t/3"),
            ],
        );
        let want: Vec<(String, String)> = [("http://t/1", "http://t/3"), ("http://t/2", "http://t/3")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(got, want);
    }
}

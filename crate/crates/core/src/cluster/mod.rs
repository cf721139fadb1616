//! Synonym clusters: construction, merging, sameAs consistency and
//! cross-KB reference checks.

mod kb;
mod patch;
mod sameas;
mod union_find;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use kb::{
    check_intra_cluster_refs, check_kb_pairing, extract_refs, Correspondence, ExternalRef, KbMap,
};
pub use patch::{emit_patch, Patch};
pub use sameas::{sameas_violation_findings, sameas_violations};
pub use union_find::UnionFind;

use crate::rdf::vocab::{rdfs, skos};
use crate::rdf::{Graph, GraphBuilder, Iri, Term, Triple};
use crate::reporting::{Category, Finding, Severity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// Preferred member, or the least member when none is designated.
    pub canonical: Iri,
    pub members: BTreeSet<Iri>,
    pub preferred: Option<Iri>,
}

/// A cluster whose members designate more than one preferred member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferredConflict {
    pub kept: Iri,
    pub candidates: Vec<Iri>,
    pub evidence: Vec<Triple>,
}

#[derive(Debug, Clone)]
pub struct ClusterSet {
    clusters: BTreeMap<Iri, Cluster>,
    member_of: HashMap<Iri, Iri>,
    pub equivalence_properties: Vec<Iri>,
    pub preferred_property: Option<Iri>,
    pub conflicts: Vec<PreferredConflict>,
}

impl ClusterSet {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cluster> {
        self.clusters.values()
    }

    /// The cluster containing `topic`, if it is in the topic universe.
    pub fn cluster_of(&self, topic: &Iri) -> Option<&Cluster> {
        self.member_of.get(topic).and_then(|c| self.clusters.get(c))
    }

    pub fn canonical_of<'a>(&'a self, topic: &'a Iri) -> &'a Iri {
        self.member_of.get(topic).unwrap_or(topic)
    }

    pub fn same_cluster(&self, a: &Iri, b: &Iri) -> bool {
        a == b || self.canonical_of(a) == self.canonical_of(b)
    }

    /// Cluster sizes in descending order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.clusters.values().map(|c| c.members.len()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn conflict_findings(&self, ontology: &str) -> Vec<Finding> {
        self.conflicts
            .iter()
            .map(|c| {
                Finding::new(Category::ConflictingPreferred, Severity::Warning, ontology)
                    .with_subject(Term::Iri(c.kept.clone()))
                    .with_evidence(c.evidence.clone())
            })
            .collect()
    }
}

/// Builds clusters by union over every triple whose predicate is an
/// equivalence property or the preferred-designation property. All IRI
/// subjects of the graph belong to the topic universe.
pub fn build_clusters(graph: &Graph, equiv_props: &[Iri], pref_prop: Option<&Iri>) -> ClusterSet {
    let mut universe: BTreeSet<&Iri> = graph.subjects().into_iter().filter_map(Term::as_iri).collect();
    let mut edges: Vec<(&Iri, &Iri)> = Vec::new();
    let linking = equiv_props.iter().chain(pref_prop);
    for p in linking {
        for t in graph.with_predicate(p.as_str()) {
            if let (Some(s), Some(o)) = (t.subject.as_iri(), t.object.as_iri()) {
                universe.insert(s);
                universe.insert(o);
                edges.push((s, o));
            }
        }
    }
    let topics: Vec<&Iri> = universe.into_iter().collect();
    let index: HashMap<&Iri, usize> = topics.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let mut uf = UnionFind::new(topics.len());
    for (s, o) in &edges {
        uf.union(index[s], index[o]);
    }

    let mut designations: HashMap<usize, BTreeMap<&Iri, Vec<Triple>>> = HashMap::new();
    if let Some(p) = pref_prop {
        for t in graph.with_predicate(p.as_str()) {
            if let (Some(s), Some(o)) = (t.subject.as_iri(), t.object.as_iri()) {
                let root = uf.find(index[s]);
                designations.entry(root).or_default().entry(o).or_default().push(t.to_owned());
            }
        }
    }

    let mut clusters = BTreeMap::new();
    let mut member_of = HashMap::new();
    let mut conflicts = Vec::new();
    for group in uf.groups() {
        let members: BTreeSet<Iri> = group.iter().map(|&i| topics[i].clone()).collect();
        let root = uf.find(group[0]);
        let preferred = designations.get(&root).and_then(|d| {
            let kept = (*d.keys().next()?).clone();
            if d.len() > 1 {
                conflicts.push(PreferredConflict {
                    kept: kept.clone(),
                    candidates: d.keys().map(|i| (*i).clone()).collect(),
                    evidence: d.values().flatten().cloned().collect(),
                });
            }
            Some(kept)
        });
        let canonical = preferred.clone().unwrap_or_else(|| members.iter().next().cloned().expect("non-empty"));
        for m in &members {
            member_of.insert(m.clone(), canonical.clone());
        }
        clusters.insert(
            canonical.clone(),
            Cluster {
                canonical,
                members,
                preferred,
            },
        );
    }
    ClusterSet {
        clusters,
        member_of,
        equivalence_properties: equiv_props.to_vec(),
        preferred_property: pref_prop.cloned(),
        conflicts,
    }
}

/// Collapses every cluster onto its canonical member. Labels of other
/// members become `skos:altLabel` on the canonical entity; equivalence and
/// preferred-designation triples are dropped. The returned mapping lists
/// each non-canonical member with its canonical entity.
pub fn merge_clusters(graph: &Graph, clusters: &ClusterSet) -> (Graph, BTreeMap<Iri, Iri>) {
    let mapping: BTreeMap<Iri, Iri> = clusters
        .iter()
        .flat_map(|c| {
            c.members
                .iter()
                .filter(|m| **m != c.canonical)
                .map(|m| (m.clone(), c.canonical.clone()))
        })
        .collect();
    let dropped: BTreeSet<&str> = clusters
        .equivalence_properties
        .iter()
        .chain(clusters.preferred_property.as_ref())
        .map(Iri::as_str)
        .collect();
    let rewrite = |t: &Term| -> Term {
        match t {
            Term::Iri(i) => mapping.get(i).map_or_else(|| t.clone(), |c| Term::Iri(c.clone())),
            _ => t.clone(),
        }
    };
    let alt = Iri::new_unchecked(skos::ALT_LABEL);
    let mut out = GraphBuilder::new();
    for t in graph.iter() {
        if dropped.contains(t.predicate.as_str()) {
            continue;
        }
        let subject = rewrite(t.subject);
        let renamed = &subject != t.subject;
        let predicate = if renamed && t.predicate.as_str() == rdfs::LABEL {
            alt.clone()
        } else {
            t.predicate.clone()
        };
        out.insert(Triple {
            subject,
            predicate,
            object: rewrite(t.object),
        });
    }
    (out.build(), mapping)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    const P: &str = "@prefix : <http://t/> . @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";

    fn eq() -> Vec<Iri> {
        vec![Iri::new("http://t/eq").unwrap()]
    }

    fn pref() -> Iri {
        Iri::new("http://t/pref").unwrap()
    }

    #[test]
    fn transitive_union() {
        let g = parse_turtle(&format!("{P}:a :eq :b . :b :eq :c . :d :x :y .")).unwrap();
        let cs = build_clusters(&g, &eq(), None);
        assert_eq!(cs.sizes(), vec![3, 1]);
        let a = Iri::new("http://t/a").unwrap();
        assert_eq!(cs.cluster_of(&a).unwrap().canonical, a);
    }

    #[test]
    fn no_equivalences_means_singletons() {
        let g = parse_turtle(&format!("{P}:a :x :b . :c :x :d .")).unwrap();
        assert_eq!(build_clusters(&g, &eq(), None).sizes(), vec![1, 1]);
    }

    #[test]
    fn conflicting_preferred_keeps_least() {
        let g = parse_turtle(&format!("{P}:a :eq :b . :a :pref :b . :b :pref :a .")).unwrap();
        let cs = build_clusters(&g, &eq(), Some(&pref()));
        assert_eq!(cs.conflicts.len(), 1);
        assert_eq!(cs.conflicts[0].kept.as_str(), "http://t/a");
        assert_eq!(cs.conflict_findings("X")[0].category, Category::ConflictingPreferred);
    }

    #[test]
    fn figure_shaped_merge() {
        let g = parse_turtle(&format!(
            "{P}:ml rdfs:label \"machine learning\" ; :eq :mlm ; :pref :ml ; :super :ai .\n\
             :mlm rdfs:label \"machine learning methods\" ; :pref :ml ; :super :ai .\n"
        ))
        .unwrap();
        let cs = build_clusters(&g, &eq(), Some(&pref()));
        let (merged, mapping) = merge_clusters(&g, &cs);
        assert_eq!(mapping.len(), 1);
        let nt = merged.to_ntriples();
        assert_eq!(
            nt,
            "<http://t/ml> <http://t/super> <http://t/ai> .\n\
             <http://t/ml> <http://www.w3.org/2000/01/rdf-schema#label> \"machine learning\" .\n\
             <http://t/ml> <http://www.w3.org/2004/02/skos/core#altLabel> \"machine learning methods\" .\n"
        );
    }

    #[test]
    fn singleton_merge_only_drops_designations() {
        let g = parse_turtle(&format!("{P}:a :pref :a ; :x :b . :b :x :c .")).unwrap();
        let cs = build_clusters(&g, &eq(), Some(&pref()));
        let (merged, mapping) = merge_clusters(&g, &cs);
        assert!(mapping.is_empty());
        assert_eq!(merged.len(), 2);
    }
}

use std::collections::BTreeMap;
use std::path::PathBuf;

use ontolint::cluster::{
    build_clusters, check_intra_cluster_refs, check_kb_pairing, emit_patch, extract_refs, merge_clusters,
    sameas_violations, KbMap,
};
use ontolint::rdf::vocab::{cso, owl, rdfs, skos};
use ontolint::rdf::{parse_ntriples, parse_turtle, Graph, GraphBuilder, Iri};
use ontolint::reporting::Category;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/cso").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn load() -> Graph {
    parse_turtle(&fixture("cso.ttl")).unwrap()
}

fn equiv() -> Vec<Iri> {
    vec![Iri::new(cso::RELATED_EQUIVALENT).unwrap()]
}

fn pref() -> Iri {
    Iri::new(cso::PREFERENTIAL_EQUIVALENT).unwrap()
}

fn same_as() -> Iri {
    Iri::new(owl::SAME_AS).unwrap()
}

fn labels(g: &Graph) -> Vec<String> {
    let mut v: Vec<String> = g
        .iter()
        .filter(|t| t.predicate.as_str() == rdfs::LABEL || t.predicate.as_str() == skos::ALT_LABEL)
        .map(|t| t.object.to_ntriples())
        .collect();
    v.sort();
    v
}

#[test]
fn cluster_sizes() {
    let cs = build_clusters(&load(), &equiv(), Some(&pref()));
    assert_eq!(cs.sizes(), vec![3, 3, 2, 2, 1]);
    assert!(cs.conflicts.is_empty());
}

#[test]
fn merge_matches_golden() {
    let g = load();
    assert_eq!(g.len(), 87);
    let cs = build_clusters(&g, &equiv(), Some(&pref()));
    let (merged, mapping) = merge_clusters(&g, &cs);
    let golden = parse_ntriples(&fixture("merged.golden.nt")).unwrap();
    assert_eq!(merged.len(), 54);
    assert_eq!(merged.to_ntriples(), golden.to_ntriples());
    assert_eq!(labels(&g), labels(&merged));
    assert_eq!(mapping.len(), 6);

    let again = build_clusters(&merged, &equiv(), Some(&pref()));
    let (twice, remap) = merge_clusters(&merged, &again);
    assert!(remap.is_empty());
    assert_eq!(twice, merged);
}

#[test]
fn mapping_reconstructs_membership() {
    let g = load();
    let cs = build_clusters(&g, &equiv(), Some(&pref()));
    let (_, mapping) = merge_clusters(&g, &cs);
    let mut rebuilt: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
    for (m, c) in &mapping {
        rebuilt.entry(c).or_default().push(m);
    }
    for c in cs.iter().filter(|c| c.members.len() > 1) {
        let mut want: Vec<&Iri> = c.members.iter().filter(|m| **m != c.canonical).collect();
        want.sort();
        assert_eq!(rebuilt[&c.canonical], want);
    }
}

#[test]
fn sameas_pairs() {
    let g = load();
    let cs = build_clusters(&g, &equiv(), Some(&pref()));
    let pairs = sameas_violations(&g, &cs, &same_as(), cso::TOPICS_NS);
    let names: Vec<(String, String)> = pairs
        .iter()
        .map(|(a, b)| {
            let s = |i: &Iri| i.as_str().trim_start_matches(cso::TOPICS_NS).to_string();
            (s(a), s(b))
        })
        .collect();
    assert_eq!(
        names,
        vec![
            ("malicious_software".to_string(), "malware_detection".to_string()),
            ("malware".to_string(), "malware_detection".to_string())
        ]
    );
}

#[test]
fn intra_cluster_patch_is_golden_and_sound() {
    let g = load();
    let cs = build_clusters(&g, &equiv(), Some(&pref()));
    let refs = extract_refs(&g, &same_as(), &KbMap::default(), cso::TOPICS_NS);
    let (findings, patch) = check_intra_cluster_refs(&cs, &refs, "dbpedia", &same_as(), "cso");
    assert_eq!(emit_patch(&patch), fixture("intra_patch.golden.ttl"));
    assert_eq!(findings.iter().filter(|f| f.category == Category::ClusterRefConflict).count(), 1);

    let mut b = GraphBuilder::new();
    for t in g.to_triples().into_iter().chain(patch.additions().cloned()) {
        b.insert(t);
    }
    let patched = b.build();
    let cs2 = build_clusters(&patched, &equiv(), Some(&pref()));
    let refs2 = extract_refs(&patched, &same_as(), &KbMap::default(), cso::TOPICS_NS);
    let (after, _) = check_intra_cluster_refs(&cs2, &refs2, "dbpedia", &same_as(), "cso");
    assert!(after.iter().all(|f| f.category != Category::ClusterRefMissing));
}

#[test]
fn kb_pairing_via_siblings() {
    let g = load();
    let cs = build_clusters(&g, &equiv(), Some(&pref()));
    let refs = extract_refs(&g, &same_as(), &KbMap::default(), cso::TOPICS_NS);
    let (findings, patch) = check_kb_pairing(&refs, "dbpedia", "wikidata", None, Some(&cs), &same_as(), "cso");
    assert_eq!(findings.len(), 4);
    assert!(findings.iter().all(|f| f.fixable));
    assert_eq!(patch.additions().count(), 4);
}

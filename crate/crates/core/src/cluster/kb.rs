use std::collections::{BTreeMap, BTreeSet};

use super::{ClusterSet, Patch};
use crate::rdf::iri::host;
use crate::rdf::{Graph, Iri, Term, Triple};
use crate::reporting::{Category, Finding, Severity};

/// Domain suffix to knowledge-base tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbMap {
    entries: Vec<(String, String)>,
}

impl Default for KbMap {
    fn default() -> Self {
        KbMap {
            entries: vec![
                ("dbpedia.org".into(), "dbpedia".into()),
                ("wikidata.org".into(), "wikidata".into()),
                ("yago-knowledge.org".into(), "yago".into()),
            ],
        }
    }
}

impl KbMap {
    /// Parses `domain<TAB or space>tag` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some(d), Some(t), None) => entries.push((d.to_ascii_lowercase(), t.to_string())),
                _ => return Err(format!("kb map line {}: expected `domain tag`", i + 1)),
            }
        }
        Ok(KbMap { entries })
    }

    /// Tag for the target's host: the longest configured domain that equals
    /// the host or is a parent of it, else the host itself.
    pub fn tag(&self, target: &str) -> Option<String> {
        let h = host(target)?;
        self.entries
            .iter()
            .filter(|(d, _)| h == *d || h.ends_with(&format!(".{d}")))
            .max_by_key(|(d, _)| d.len())
            .map(|(_, t)| t.clone())
            .or(Some(h))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExternalRef {
    pub topic: Iri,
    pub kb: String,
    pub target: Iri,
}

/// References from internal topics to external entities via `link_prop`.
pub fn extract_refs(graph: &Graph, link_prop: &Iri, kb_map: &KbMap, internal_prefix: &str) -> Vec<ExternalRef> {
    let mut out = Vec::new();
    for t in graph.with_predicate(link_prop.as_str()) {
        let (Some(s), Some(o)) = (t.subject.as_iri(), t.object.as_iri()) else {
            continue;
        };
        if !s.as_str().starts_with(internal_prefix) || o.as_str().starts_with(internal_prefix) {
            continue;
        }
        if let Some(kb) = kb_map.tag(o.as_str()) {
            out.push(ExternalRef {
                topic: s.clone(),
                kb,
                target: o.clone(),
            });
        }
    }
    out.sort();
    out
}

/// Symmetric target-to-target correspondences between two KBs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Correspondence {
    map: BTreeMap<Iri, BTreeSet<Iri>>,
}

impl Correspondence {
    /// Parses two whitespace-separated IRIs per line, optionally in angle brackets.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut c = Correspondence::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let strip = |s: &str| s.trim_start_matches('<').trim_end_matches('>').to_string();
            let mut parts = line.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(format!("correspondence line {}: expected two IRIs", i + 1));
            };
            let a = Iri::new(strip(a)).map_err(|e| format!("correspondence line {}: {e}", i + 1))?;
            let b = Iri::new(strip(b)).map_err(|e| format!("correspondence line {}: {e}", i + 1))?;
            c.insert(a, b);
        }
        Ok(c)
    }

    pub fn insert(&mut self, a: Iri, b: Iri) {
        self.map.entry(a.clone()).or_default().insert(b.clone());
        self.map.entry(b).or_default().insert(a);
    }

    pub fn get(&self, target: &Iri) -> impl Iterator<Item = &Iri> {
        self.map.get(target).into_iter().flatten()
    }
}

fn ref_triple(r: &ExternalRef, link_prop: &Iri) -> Triple {
    Triple {
        subject: Term::Iri(r.topic.clone()),
        predicate: link_prop.clone(),
        object: Term::Iri(r.target.clone()),
    }
}

/// `MissingPairedReference` for each topic referencing exactly one of the two
/// KBs. A unique counterpart from the correspondence map, or failing that
/// from same-cluster siblings, makes the finding fixable; its suggested
/// triples are collected in the returned patch.
#[allow(clippy::too_many_arguments)]
pub fn check_kb_pairing(
    refs: &[ExternalRef],
    kb_a: &str,
    kb_b: &str,
    correspondence: Option<&Correspondence>,
    clusters: Option<&ClusterSet>,
    link_prop: &Iri,
    ontology: &str,
) -> (Vec<Finding>, Patch) {
    let mut by_topic: BTreeMap<&Iri, BTreeMap<&str, BTreeSet<&Iri>>> = BTreeMap::new();
    for r in refs.iter().filter(|r| r.kb == kb_a || r.kb == kb_b) {
        by_topic.entry(&r.topic).or_default().entry(r.kb.as_str()).or_default().insert(&r.target);
    }
    let mut findings = Vec::new();
    let mut patch = Patch::new();
    for (topic, kbs) in &by_topic {
        let (present, missing) = match (kbs.contains_key(kb_a), kbs.contains_key(kb_b)) {
            (true, false) => (kb_a, kb_b),
            (false, true) => (kb_b, kb_a),
            _ => continue,
        };
        let mut candidates: BTreeSet<&Iri> = BTreeSet::new();
        if let Some(c) = correspondence {
            for t in &kbs[present] {
                candidates.extend(c.get(t));
            }
        }
        if candidates.is_empty() {
            if let Some(cluster) = clusters.and_then(|cs| cs.cluster_of(topic)) {
                for m in cluster.members.iter().filter(|m| *m != *topic) {
                    if let Some(targets) = by_topic.get(m).and_then(|k| k.get(missing)) {
                        candidates.extend(targets);
                    }
                }
            }
        }
        let evidence: Vec<Triple> = refs
            .iter()
            .filter(|r| r.topic == **topic && r.kb == present)
            .map(|r| ref_triple(r, link_prop))
            .collect();
        let mut f = Finding::new(Category::MissingPairedReference, Severity::Warning, ontology)
            .with_subject(Term::Iri((*topic).clone()))
            .with_evidence(evidence);
        if candidates.len() == 1 {
            let target = candidates.into_iter().next().expect("one candidate");
            let fix = Triple {
                subject: Term::Iri((*topic).clone()),
                predicate: link_prop.clone(),
                object: Term::Iri(target.clone()),
            };
            patch.add(fix.clone(), format!("MissingPairedReference for topic <{topic}> ({missing})"));
            f = f.with_fix(fix);
        }
        findings.push(f);
    }
    (findings, patch)
}

/// Per cluster: two or more distinct targets in `kb` give a
/// `ClusterRefConflict`; exactly one target gives a `ClusterRefMissing`
/// for every member lacking it, with the missing triple added to the patch.
pub fn check_intra_cluster_refs(
    clusters: &ClusterSet,
    refs: &[ExternalRef],
    kb: &str,
    link_prop: &Iri,
    ontology: &str,
) -> (Vec<Finding>, Patch) {
    let mut by_topic: BTreeMap<&Iri, Vec<&ExternalRef>> = BTreeMap::new();
    for r in refs.iter().filter(|r| r.kb == kb) {
        by_topic.entry(&r.topic).or_default().push(r);
    }
    let mut findings = Vec::new();
    let mut patch = Patch::new();
    for cluster in clusters.iter() {
        let member_refs: Vec<&ExternalRef> = cluster
            .members
            .iter()
            .flat_map(|m| by_topic.get(m).into_iter().flatten().copied())
            .collect();
        let targets: BTreeSet<&Iri> = member_refs.iter().map(|r| &r.target).collect();
        match targets.len() {
            0 => {}
            1 => {
                let target = targets.into_iter().next().expect("one target");
                for m in cluster.members.iter().filter(|m| !by_topic.contains_key(m)) {
                    let fix = Triple {
                        subject: Term::Iri(m.clone()),
                        predicate: link_prop.clone(),
                        object: Term::Iri(target.clone()),
                    };
                    patch.add(fix.clone(), format!("ClusterRefMissing in cluster <{}>", cluster.canonical));
                    findings.push(
                        Finding::new(Category::ClusterRefMissing, Severity::Warning, ontology)
                            .with_subject(Term::Iri(m.clone()))
                            .with_evidence(member_refs.iter().map(|r| ref_triple(r, link_prop)).collect())
                            .with_fix(fix),
                    );
                }
            }
            _ => findings.push(
                Finding::new(Category::ClusterRefConflict, Severity::Warning, ontology)
                    .with_subject(Term::Iri(cluster.canonical.clone()))
                    .with_evidence(member_refs.iter().map(|r| ref_triple(r, link_prop)).collect()),
            ),
        }
    }
    (findings, patch)
}

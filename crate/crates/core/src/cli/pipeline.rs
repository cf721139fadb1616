//! Subcommand pipelines as library functions.

use std::collections::{BTreeSet, HashSet};

use serde_json::json;

use crate::cluster::{
    build_clusters, check_intra_cluster_refs, check_kb_pairing, extract_refs, merge_clusters,
    sameas_violation_findings, sameas_violations, ClusterSet, Correspondence, KbMap, Patch,
};
use crate::conflation::{
    review_item, score_clusters, select_suspects, suspect_findings, ClusterScore, EmbedError, EmbeddingProvider,
    SuspectOptions,
};
use crate::netqa::{detect_outliers, LinkGraph, OutlierCandidate, OutlierOptions};
use crate::profiler::{
    effective_rules, find_object_kind_conflicts, find_rare_properties, profile_properties, ObjectKindOptions,
    RangeRule, DEFAULT_MINORITY_FRAC, DEFAULT_RARE_THRESHOLD,
};
use crate::rdf::vocab::{cso, default_xref_properties, owl};
use crate::rdf::{Dataset, Graph, GraphBuilder, Iri, Term};
use crate::reporting::{Category, Finding, Severity, COMBINED};
use crate::review::{ItemKind, ReviewItem};
use crate::xref::{
    classify_all, extract_xrefs, known_targets, summarize_xrefs, xref_findings, PrefixRegistry, XrefClass,
    XrefOccurrence, XrefSummary,
};

#[derive(Debug, Clone)]
pub struct XrefConfig {
    pub registry: PrefixRegistry,
    pub properties: BTreeSet<String>,
    /// Extra IRIs accepted as valid targets besides the dataset's subjects.
    pub allow: HashSet<String>,
    pub top_domains: usize,
}

impl Default for XrefConfig {
    fn default() -> Self {
        XrefConfig {
            registry: PrefixRegistry::bundled(),
            properties: default_xref_properties().into_iter().map(String::from).collect(),
            allow: HashSet::new(),
            top_domains: 3,
        }
    }
}

pub struct XrefReport {
    pub summary: XrefSummary,
    pub classified: Vec<(XrefOccurrence, XrefClass)>,
    pub findings: Vec<Finding>,
}

pub fn run_xref(dataset: &Dataset, config: &XrefConfig) -> XrefReport {
    let mut known = known_targets(dataset);
    known.extend(config.allow.iter().cloned());
    let classified = classify_all(extract_xrefs(dataset, &config.properties), &config.registry, &known);
    XrefReport {
        summary: summarize_xrefs(&classified, config.top_domains),
        findings: xref_findings(&classified),
        classified,
    }
}

#[derive(Debug, Clone)]
pub struct LintConfig {
    pub rare_threshold: usize,
    pub minority_frac: f64,
    pub rules: Vec<RangeRule>,
    /// Cross-reference checks run as part of linting unless `None`.
    pub xref: Option<XrefConfig>,
}

impl Default for LintConfig {
    fn default() -> Self {
        LintConfig {
            rare_threshold: DEFAULT_RARE_THRESHOLD,
            minority_frac: DEFAULT_MINORITY_FRAC,
            rules: Vec::new(),
            xref: Some(XrefConfig::default()),
        }
    }
}

/// Property profiling plus cross-reference findings, in that order.
pub fn run_lint(dataset: &Dataset, config: &LintConfig) -> Vec<Finding> {
    let profiles = profile_properties(dataset);
    let mut out = find_rare_properties(&profiles, config.rare_threshold, dataset);
    let rules = effective_rules(&profiles, &config.rules);
    let opts = ObjectKindOptions {
        minority_frac: config.minority_frac,
        ..ObjectKindOptions::default()
    };
    out.extend(find_object_kind_conflicts(&profiles, &rules, dataset, &opts));
    if let Some(x) = &config.xref {
        out.extend(run_xref(dataset, x).findings);
    }
    out
}

pub fn has_errors(findings: &[Finding]) -> bool {
    findings.iter().any(|f| f.severity == Severity::Error)
}

/// Union of all loaded graphs, attributed to the single ontology id or to
/// `combined`.
pub fn combined_graph(dataset: &Dataset) -> (Graph, String) {
    if dataset.len() == 1 {
        let (id, g) = dataset.iter().next().expect("one graph");
        return (g.clone(), id.to_string());
    }
    let mut b = GraphBuilder::new();
    for (_, g) in dataset.iter() {
        for t in g.iter() {
            b.insert(t.to_owned());
        }
    }
    (b.build(), COMBINED.to_string())
}

#[derive(Debug, Clone)]
pub struct CsoConfig {
    pub equiv_props: Vec<Iri>,
    pub pref_prop: Option<Iri>,
    pub link_prop: Iri,
    pub internal_prefix: String,
    pub kb_map: KbMap,
    pub correspondence: Option<Correspondence>,
    pub kb_a: String,
    pub kb_b: String,
}

impl Default for CsoConfig {
    fn default() -> Self {
        CsoConfig {
            equiv_props: vec![Iri::new(cso::RELATED_EQUIVALENT).expect("constant")],
            pref_prop: Some(Iri::new(cso::PREFERENTIAL_EQUIVALENT).expect("constant")),
            link_prop: Iri::new(owl::SAME_AS).expect("constant"),
            internal_prefix: cso::TOPICS_NS.to_string(),
            kb_map: KbMap::default(),
            correspondence: None,
            kb_a: "dbpedia".into(),
            kb_b: "wikidata".into(),
        }
    }
}

impl CsoConfig {
    pub fn clusters(&self, graph: &Graph) -> ClusterSet {
        build_clusters(graph, &self.equiv_props, self.pref_prop.as_ref())
    }
}

pub struct CsoCheck {
    pub clusters: ClusterSet,
    pub findings: Vec<Finding>,
    pub patch: Patch,
}

/// Preferred-member conflicts, sameAs closure violations, intra-cluster
/// reference checks for both KBs, and KB pairing. The patch holds every
/// suggested addition.
pub fn run_cso_check(graph: &Graph, ontology: &str, config: &CsoConfig) -> CsoCheck {
    let clusters = config.clusters(graph);
    let mut findings = clusters.conflict_findings(ontology);
    let pairs = sameas_violations(graph, &clusters, &config.link_prop, &config.internal_prefix);
    findings.extend(sameas_violation_findings(graph, &pairs, &config.link_prop, ontology));
    let refs = extract_refs(graph, &config.link_prop, &config.kb_map, &config.internal_prefix);
    let mut patch = Patch::new();
    for kb in [&config.kb_a, &config.kb_b] {
        let (f, p) = check_intra_cluster_refs(&clusters, &refs, kb, &config.link_prop, ontology);
        findings.extend(f);
        patch.extend(p);
    }
    let (f, p) = check_kb_pairing(
        &refs,
        &config.kb_a,
        &config.kb_b,
        config.correspondence.as_ref(),
        Some(&clusters),
        &config.link_prop,
        ontology,
    );
    findings.extend(f);
    patch.extend(p);
    CsoCheck { clusters, findings, patch }
}

pub fn run_cso_merge(graph: &Graph, config: &CsoConfig) -> (Graph, std::collections::BTreeMap<Iri, Iri>) {
    merge_clusters(graph, &config.clusters(graph))
}

pub struct OutlierRun {
    pub candidates: Vec<OutlierCandidate>,
    pub items: Vec<ReviewItem>,
    pub findings: Vec<Finding>,
}

pub fn run_outliers(graph: &LinkGraph, options: &OutlierOptions) -> OutlierRun {
    let candidates = detect_outliers(graph, options);
    let items = candidates
        .iter()
        .map(|c| {
            ReviewItem::new(
                ItemKind::AlignmentSuspect,
                json!({"target": c.node, "tactic": c.tactic, "evidence": c.evidence}),
            )
        })
        .collect();
    let findings = candidates
        .iter()
        .map(|c| {
            let f = Finding::new(Category::AlignmentSuspect, Severity::Info, COMBINED);
            match Term::iri(c.node.clone()) {
                Ok(t) => f.with_subject(t),
                Err(_) => f,
            }
        })
        .collect();
    OutlierRun { candidates, items, findings }
}

pub struct ConflationRun {
    pub scores: Vec<ClusterScore>,
    pub items: Vec<ReviewItem>,
    pub findings: Vec<Finding>,
}

pub fn run_conflation(
    graph: &Graph,
    ontology: &str,
    config: &CsoConfig,
    provider: &dyn EmbeddingProvider,
    options: &SuspectOptions,
) -> Result<ConflationRun, EmbedError> {
    let scores = score_clusters(graph, &config.clusters(graph), provider)?;
    let picked = select_suspects(&scores, options);
    let items = picked.iter().map(|s| review_item(s)).collect();
    let findings = suspect_findings(graph, &picked, ontology);
    Ok(ConflationRun { scores, items, findings })
}

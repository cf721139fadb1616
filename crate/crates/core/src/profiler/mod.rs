//! Predicate usage profiles, rare or undefined properties, and object-kind conflicts.

mod rules;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

pub use rules::{parse_rules, ExpectedKind, RangeRule, RuleSource, RulesError};

use crate::rdf::vocab::{rdf, rdfs, xsd, BUILTIN_NAMESPACES};
use crate::rdf::{iri, Dataset, Iri, Term, TermKind, Triple};
use crate::reporting::{Category, Finding, Severity, COMBINED};

pub const DEFAULT_RARE_THRESHOLD: usize = 10;
pub const DEFAULT_MINORITY_FRAC: f64 = 0.10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindCounts {
    pub iri: usize,
    pub blank: usize,
    pub literal: usize,
}

impl KindCounts {
    pub fn get(&self, kind: TermKind) -> usize {
        match kind {
            TermKind::Iri => self.iri,
            TermKind::Blank => self.blank,
            TermKind::Literal => self.literal,
        }
    }

    fn bump(&mut self, kind: TermKind) {
        match kind {
            TermKind::Iri => self.iri += 1,
            TermKind::Blank => self.blank += 1,
            TermKind::Literal => self.literal += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.iri + self.blank + self.literal
    }
}

/// What a property's declared `rdfs:range` says about its objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RangeKind {
    IriOnly,
    LiteralOnly,
    Mixed,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyProfile {
    pub predicate: Iri,
    pub uses_total: usize,
    pub uses_by_ontology: BTreeMap<String, usize>,
    pub object_kinds: KindCounts,
    pub distinct_subjects: usize,
    pub defined: bool,
    pub declared_range: Option<RangeKind>,
}

fn is_builtin(p: &str) -> bool {
    BUILTIN_NAMESPACES.iter().any(|ns| p.starts_with(ns))
}

fn range_kind_of(range: &Term) -> RangeKind {
    match range {
        Term::Iri(r) => {
            let r = r.as_str();
            if r.starts_with(xsd::NS)
                || r == rdfs::LITERAL
                || r == rdf::LANG_STRING
                || r == rdf::PLAIN_LITERAL
            {
                RangeKind::LiteralOnly
            } else if r == rdfs::RESOURCE {
                RangeKind::Mixed
            } else {
                RangeKind::IriOnly
            }
        }
        _ => RangeKind::Unknown,
    }
}

/// Subjects declared as properties anywhere in the dataset: typed as some
/// `*Property`, or given a domain, range or label.
fn declared_properties(dataset: &Dataset) -> BTreeSet<&Term> {
    let mut out = BTreeSet::new();
    for (_, g) in dataset.iter() {
        for t in g.with_predicate(rdf::TYPE) {
            if t.object.as_iri().is_some_and(|o| o.as_str().ends_with("Property")) {
                out.insert(t.subject);
            }
        }
        for p in [rdfs::DOMAIN, rdfs::RANGE, rdfs::LABEL] {
            for t in g.with_predicate(p) {
                out.insert(t.subject);
            }
        }
    }
    out
}

fn declared_ranges(dataset: &Dataset) -> HashMap<String, RangeKind> {
    let mut out: HashMap<String, RangeKind> = HashMap::new();
    for (_, g) in dataset.iter() {
        for t in g.with_predicate(rdfs::RANGE) {
            let Some(p) = t.subject.as_iri() else { continue };
            let kind = range_kind_of(t.object);
            out.entry(p.as_str().to_string())
                .and_modify(|k| {
                    if *k != kind {
                        *k = RangeKind::Mixed;
                    }
                })
                .or_insert(kind);
        }
    }
    out
}

/// One profile per distinct predicate, most used first, then by IRI.
pub fn profile_properties(dataset: &Dataset) -> Vec<PropertyProfile> {
    struct Acc<'a> {
        by_ont: BTreeMap<String, usize>,
        kinds: KindCounts,
        subjects: BTreeSet<&'a Term>,
    }
    let mut acc: BTreeMap<&Iri, Acc<'_>> = BTreeMap::new();
    for (id, g) in dataset.iter() {
        for t in g.iter() {
            let a = acc.entry(t.predicate).or_insert_with(|| Acc {
                by_ont: BTreeMap::new(),
                kinds: KindCounts::default(),
                subjects: BTreeSet::new(),
            });
            *a.by_ont.entry(id.to_string()).or_default() += 1;
            a.kinds.bump(t.object.kind());
            a.subjects.insert(t.subject);
        }
    }
    let declared = declared_properties(dataset);
    let ranges = declared_ranges(dataset);
    let mut profiles: Vec<PropertyProfile> = acc
        .into_iter()
        .map(|(p, a)| {
            let term = Term::Iri(p.clone());
            PropertyProfile {
                predicate: p.clone(),
                uses_total: a.kinds.total(),
                uses_by_ontology: a.by_ont,
                object_kinds: a.kinds,
                distinct_subjects: a.subjects.len(),
                defined: declared.contains(&term) || is_builtin(p.as_str()),
                declared_range: ranges.get(p.as_str()).copied(),
            }
        })
        .collect();
    profiles.sort_by(|a, b| b.uses_total.cmp(&a.uses_total).then_with(|| a.predicate.cmp(&b.predicate)));
    profiles
}

fn evidence_for(dataset: &Dataset, predicate: &Iri) -> Vec<(String, Triple)> {
    let mut out = Vec::new();
    for (id, g) in dataset.iter() {
        for t in g.with_predicate(predicate.as_str()) {
            out.push((id.to_string(), t.to_owned()));
        }
    }
    out
}

/// `RarePropertyUse` for every predicate used at most `threshold` times.
/// Undefined or malformed predicates are errors, the rest warnings. The
/// finding is attributed to the only ontology using the predicate, or to
/// `combined` when several do.
pub fn find_rare_properties(
    profiles: &[PropertyProfile],
    threshold: usize,
    dataset: &Dataset,
) -> Vec<Finding> {
    let mut out = Vec::new();
    for p in profiles.iter().filter(|p| p.uses_total <= threshold) {
        let severity = if !p.defined || !iri::is_well_formed(p.predicate.as_str()) {
            Severity::Error
        } else {
            Severity::Warning
        };
        let ontology = match p.uses_by_ontology.len() {
            1 => p.uses_by_ontology.keys().next().cloned().unwrap_or_default(),
            _ => COMBINED.to_string(),
        };
        let evidence = evidence_for(dataset, &p.predicate).into_iter().map(|(_, t)| t).collect();
        out.push(
            Finding::new(Category::RarePropertyUse, severity, ontology)
                .with_subject(Term::Iri(p.predicate.clone()))
                .with_evidence(evidence),
        );
    }
    out
}

/// Merges declared ranges with user rules; user rules win.
pub fn effective_rules(profiles: &[PropertyProfile], user: &[RangeRule]) -> Vec<RangeRule> {
    let mut by_pred: BTreeMap<Iri, RangeRule> = BTreeMap::new();
    for p in profiles {
        let expected = match p.declared_range {
            Some(RangeKind::IriOnly) => ExpectedKind::IriOnly,
            Some(RangeKind::LiteralOnly) => ExpectedKind::LiteralOnly,
            _ => continue,
        };
        by_pred.insert(
            p.predicate.clone(),
            RangeRule {
                predicate: p.predicate.clone(),
                expected,
                source: RuleSource::DeclaredRange,
            },
        );
    }
    for r in user {
        by_pred.insert(r.predicate.clone(), r.clone());
    }
    by_pred.into_values().collect()
}

#[derive(Debug, Clone)]
pub struct ObjectKindOptions {
    /// Minority share below which an un-ruled object kind is suspect.
    pub minority_frac: f64,
    /// Predicates exempt from the majority heuristic.
    pub skip: BTreeSet<String>,
}

impl Default for ObjectKindOptions {
    fn default() -> Self {
        ObjectKindOptions {
            minority_frac: DEFAULT_MINORITY_FRAC,
            skip: crate::rdf::vocab::default_xref_properties()
                .into_iter()
                .map(String::from)
                .collect(),
        }
    }
}

fn violates(expected: ExpectedKind, kind: TermKind) -> bool {
    match expected {
        ExpectedKind::IriOnly => kind != TermKind::Iri,
        ExpectedKind::LiteralOnly => kind != TermKind::Literal,
    }
}

/// Object-kind checks. Ruled predicates yield `ObjectKindMismatch` per
/// violating triple; un-ruled predicates with a small minority kind yield
/// `ObjectKindSuspect` per minority triple.
pub fn find_object_kind_conflicts(
    profiles: &[PropertyProfile],
    rules: &[RangeRule],
    dataset: &Dataset,
    options: &ObjectKindOptions,
) -> Vec<Finding> {
    let rules: HashMap<&Iri, &RangeRule> = rules.iter().map(|r| (&r.predicate, r)).collect();
    let mut out = Vec::new();
    for p in profiles {
        if let Some(rule) = rules.get(&p.predicate) {
            for (ont, t) in evidence_for(dataset, &p.predicate) {
                if !violates(rule.expected, t.object.kind()) {
                    continue;
                }
                let mut f = Finding::new(Category::ObjectKindMismatch, Severity::Warning, ont)
                    .with_subject(t.subject.clone());
                if rule.expected == ExpectedKind::IriOnly {
                    if let Some(fix) = literal_as_iri(&t) {
                        f = f.with_fix(fix);
                    }
                }
                out.push(f.with_evidence(vec![t]));
            }
            continue;
        }
        if options.skip.contains(p.predicate.as_str()) {
            continue;
        }
        let kinds = [TermKind::Iri, TermKind::Blank, TermKind::Literal];
        let used = kinds.iter().filter(|&&k| p.object_kinds.get(k) > 0).count();
        if used < 2 {
            continue;
        }
        let total = p.uses_total as f64;
        let majority = kinds
            .into_iter()
            .max_by_key(|&k| (p.object_kinds.get(k), std::cmp::Reverse(k)))
            .expect("non-empty");
        let minority = |k: TermKind| k != majority && (p.object_kinds.get(k) as f64) / total < options.minority_frac;
        if !kinds.into_iter().any(minority) {
            continue;
        }
        for (ont, t) in evidence_for(dataset, &p.predicate) {
            if minority(t.object.kind()) {
                out.push(
                    Finding::new(Category::ObjectKindSuspect, Severity::Info, ont)
                        .with_subject(t.subject.clone())
                        .with_evidence(vec![t]),
                );
            }
        }
    }
    out
}

fn literal_as_iri(t: &Triple) -> Option<Triple> {
    let lit = t.object.as_literal()?;
    if !iri::looks_like_absolute_iri(lit.lexical()) {
        return None;
    }
    let object = Term::iri(lit.lexical()).ok()?;
    Triple::new(t.subject.clone(), t.predicate.clone(), object).ok()
}

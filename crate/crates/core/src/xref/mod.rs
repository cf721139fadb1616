//! Cross-reference extraction and classification against a prefix registry.

mod curie;
mod registry;
mod summary;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

pub use curie::{parse_curie, CurieParse, NotACurie, Separator};
pub use registry::{PrefixRegistry, RegistryEntry, RegistryError};
pub use summary::{render_summary, summarize_xrefs, XrefSummary};

use crate::rdf::iri::{host, looks_like_absolute_iri, scheme};
use crate::rdf::vocab::skos;
use crate::rdf::{Dataset, Iri, Term, Triple};
use crate::reporting::{Category, Finding, Severity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XrefOccurrence {
    pub subject: Term,
    pub property: Iri,
    pub value: Term,
    pub ontology: String,
}

impl XrefOccurrence {
    pub fn triple(&self) -> Triple {
        Triple {
            subject: self.subject.clone(),
            predicate: self.property.clone(),
            object: self.value.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "domain")]
pub enum XrefKind {
    UriValidTarget,
    UriExternal(String),
    TextOboPrefix,
    TextRegistryPrefix,
    TextUnknown,
    BlankNodeTarget,
}

impl XrefKind {
    pub fn name(&self) -> &'static str {
        match self {
            XrefKind::UriValidTarget => "UriValidTarget",
            XrefKind::UriExternal(_) => "UriExternal",
            XrefKind::TextOboPrefix => "TextOboPrefix",
            XrefKind::TextRegistryPrefix => "TextRegistryPrefix",
            XrefKind::TextUnknown => "TextUnknown",
            XrefKind::BlankNodeTarget => "BlankNodeTarget",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XrefClass {
    pub kind: XrefKind,
    pub resolved_iri: Option<Iri>,
    pub nonstandard_separator: bool,
}

impl XrefClass {
    fn plain(kind: XrefKind) -> Self {
        XrefClass {
            kind,
            resolved_iri: None,
            nonstandard_separator: false,
        }
    }
}

/// One occurrence per triple whose predicate is in `properties`, ordered by
/// ontology id, then property, then triple.
pub fn extract_xrefs(dataset: &Dataset, properties: &BTreeSet<String>) -> Vec<XrefOccurrence> {
    let mut out = Vec::new();
    for (id, g) in dataset.iter() {
        for p in properties {
            for t in g.with_predicate(p) {
                out.push(XrefOccurrence {
                    subject: t.subject.clone(),
                    property: t.predicate.clone(),
                    value: t.object.clone(),
                    ontology: id.to_string(),
                });
            }
        }
    }
    out
}

/// IRIs of every subject in the dataset, the default set of valid targets.
pub fn known_targets(dataset: &Dataset) -> HashSet<String> {
    let mut out = HashSet::new();
    for (_, g) in dataset.iter() {
        for s in g.subjects() {
            if let Some(i) = s.as_iri() {
                out.insert(i.as_str().to_string());
            }
        }
    }
    out
}

fn classify_uri(value: &str, known: &HashSet<String>) -> XrefClass {
    if known.contains(value) {
        return XrefClass {
            kind: XrefKind::UriValidTarget,
            resolved_iri: Iri::new(value).ok(),
            nonstandard_separator: false,
        };
    }
    let domain = host(value)
        .or_else(|| scheme(value).map(str::to_ascii_lowercase))
        .unwrap_or_default();
    XrefClass::plain(XrefKind::UriExternal(domain))
}

pub fn classify_xref(
    occ: &XrefOccurrence,
    registry: &PrefixRegistry,
    known: &HashSet<String>,
) -> XrefClass {
    let text = match &occ.value {
        Term::Blank(_) => return XrefClass::plain(XrefKind::BlankNodeTarget),
        Term::Iri(i) => return classify_uri(i.as_str(), known),
        Term::Literal(l) => l.lexical(),
    };
    if looks_like_absolute_iri(text) {
        return classify_uri(text, known);
    }
    let Ok(curie) = parse_curie(text) else {
        return XrefClass::plain(XrefKind::TextUnknown);
    };
    let nonstandard = curie.separator == Separator::Underscore;
    match registry.lookup(&curie.prefix) {
        Some(entry) => XrefClass {
            kind: if entry.obo_member {
                XrefKind::TextOboPrefix
            } else {
                XrefKind::TextRegistryPrefix
            },
            resolved_iri: Iri::new(entry.expand(&curie.local_id)).ok(),
            nonstandard_separator: nonstandard,
        },
        None => XrefClass {
            kind: XrefKind::TextUnknown,
            resolved_iri: None,
            nonstandard_separator: nonstandard,
        },
    }
}

pub fn classify_all(
    occurrences: Vec<XrefOccurrence>,
    registry: &PrefixRegistry,
    known: &HashSet<String>,
) -> Vec<(XrefOccurrence, XrefClass)> {
    occurrences
        .into_iter()
        .map(|o| {
            let c = classify_xref(&o, registry, known);
            (o, c)
        })
        .collect()
}

/// Findings for classified occurrences: blank targets, external URIs,
/// unknown prefixes, and literal values of SKOS mapping properties.
pub fn xref_findings(classified: &[(XrefOccurrence, XrefClass)]) -> Vec<Finding> {
    let mut out = Vec::new();
    for (occ, class) in classified {
        let base = |category, severity| {
            Finding::new(category, severity, occ.ontology.clone())
                .with_subject(occ.subject.clone())
                .with_evidence(vec![occ.triple()])
        };
        match class.kind {
            XrefKind::BlankNodeTarget => out.push(base(Category::XrefBlankTarget, Severity::Error)),
            XrefKind::UriExternal(_) => out.push(base(Category::XrefUriTarget, Severity::Warning)),
            XrefKind::TextUnknown => out.push(base(Category::XrefUnknownPrefix, Severity::Warning)),
            _ => {}
        }
        if skos::MATCH_PROPERTIES.contains(&occ.property.as_str()) && !occ.value.is_iri() {
            let mut f = base(Category::NonUriMatchValue, Severity::Warning);
            if let Some(iri) = &class.resolved_iri {
                f = f.with_fix(Triple {
                    subject: occ.subject.clone(),
                    predicate: occ.property.clone(),
                    object: Term::Iri(iri.clone()),
                });
            }
            out.push(f);
        }
    }
    out
}

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Category, Finding, Subject};
use crate::rdf::Triple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub ontology: String,
    pub counts: BTreeMap<Category, usize>,
}

/// Per-ontology finding counts plus a totals row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryTable {
    pub rows: Vec<SummaryRow>,
    pub totals: BTreeMap<Category, usize>,
    pub total: usize,
    pub dedup: bool,
}

impl SummaryTable {
    /// Categories with a non-zero count anywhere, in declaration order.
    pub fn columns(&self) -> Vec<Category> {
        let used: BTreeSet<Category> = self
            .rows
            .iter()
            .flat_map(|r| r.counts.iter().filter(|(_, &n)| n > 0).map(|(c, _)| *c))
            .collect();
        Category::ALL.into_iter().filter(|c| used.contains(c)).collect()
    }

    pub fn row(&self, ontology: &str) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.ontology == ontology)
    }
}

type DedupKey = (Category, Vec<String>, Option<Subject>);

fn dedup_key(f: &Finding) -> DedupKey {
    let mut evidence: Vec<String> = f.evidence.iter().map(Triple::to_ntriples).collect();
    evidence.sort();
    evidence.dedup();
    // Findings without evidence fall back to their subject so unrelated ones stay apart.
    let subject = if evidence.is_empty() { f.subject.clone() } else { None };
    (f.category, evidence, subject)
}

/// Folds findings into a summary. With `dedup`, totals count findings that
/// are identical up to ontology attribution only once.
pub fn aggregate(findings: &[Finding], dedup: bool) -> SummaryTable {
    let mut rows: BTreeMap<String, BTreeMap<Category, usize>> = BTreeMap::new();
    for f in findings {
        *rows
            .entry(f.ontology.clone())
            .or_default()
            .entry(f.category)
            .or_default() += 1;
    }
    let mut totals: BTreeMap<Category, usize> = BTreeMap::new();
    if dedup {
        let keys: BTreeSet<DedupKey> = findings.iter().map(dedup_key).collect();
        for (category, _, _) in keys {
            *totals.entry(category).or_default() += 1;
        }
    } else {
        for counts in rows.values() {
            for (c, n) in counts {
                *totals.entry(*c).or_default() += n;
            }
        }
    }
    let total = totals.values().sum();
    SummaryTable {
        rows: rows
            .into_iter()
            .map(|(ontology, counts)| SummaryRow { ontology, counts })
            .collect(),
        totals,
        total,
        dedup,
    }
}

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{XrefClass, XrefKind, XrefOccurrence};
use crate::reporting::{format_percent, TableFormat};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainCount {
    pub domain: String,
    pub count: u64,
}

/// Counts in the layout of the cross-reference table: URI (valid, top
/// domains, other), textual (OBO, registry, unknown), blank, total.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct XrefSummary {
    pub total: u64,
    pub uri: u64,
    pub uri_valid: u64,
    pub uri_domains: Vec<DomainCount>,
    pub uri_other: u64,
    pub textual: u64,
    pub text_obo: u64,
    pub text_registry: u64,
    pub text_unknown: u64,
    pub blank: u64,
    /// Underscore-separated identifiers per class name.
    pub nonstandard_separator: BTreeMap<String, u64>,
}

impl XrefSummary {
    pub fn count(&self, kind: &str) -> u64 {
        match kind {
            "UriValidTarget" => self.uri_valid,
            "UriExternal" => self.uri - self.uri_valid,
            "TextOboPrefix" => self.text_obo,
            "TextRegistryPrefix" => self.text_registry,
            "TextUnknown" => self.text_unknown,
            "BlankNodeTarget" => self.blank,
            _ => 0,
        }
    }

    pub fn nonstandard_total(&self) -> u64 {
        self.nonstandard_separator.values().sum()
    }
}

/// Tallies classified occurrences, listing the `top_domains` most frequent
/// external domains separately.
pub fn summarize_xrefs(classified: &[(XrefOccurrence, XrefClass)], top_domains: usize) -> XrefSummary {
    let mut s = XrefSummary::default();
    let mut domains: BTreeMap<&str, u64> = BTreeMap::new();
    for (_, c) in classified {
        s.total += 1;
        match &c.kind {
            XrefKind::UriValidTarget => {
                s.uri += 1;
                s.uri_valid += 1;
            }
            XrefKind::UriExternal(d) => {
                s.uri += 1;
                *domains.entry(d.as_str()).or_default() += 1;
            }
            XrefKind::TextOboPrefix => {
                s.textual += 1;
                s.text_obo += 1;
            }
            XrefKind::TextRegistryPrefix => {
                s.textual += 1;
                s.text_registry += 1;
            }
            XrefKind::TextUnknown => {
                s.textual += 1;
                s.text_unknown += 1;
            }
            XrefKind::BlankNodeTarget => s.blank += 1,
        }
        if c.nonstandard_separator {
            *s.nonstandard_separator.entry(c.kind.name().to_string()).or_default() += 1;
        }
    }
    let mut ranked: Vec<DomainCount> = domains
        .into_iter()
        .map(|(d, n)| DomainCount {
            domain: d.to_string(),
            count: n,
        })
        .collect();
    ranked.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.domain.cmp(&b.domain)));
    let rest: u64 = ranked.iter().skip(top_domains).map(|d| d.count).sum();
    ranked.truncate(top_domains);
    s.uri_domains = ranked;
    s.uri_other = rest;
    s
}

pub fn render_summary(s: &XrefSummary, format: TableFormat) -> String {
    if format == TableFormat::Json {
        let mut out = serde_json::to_string_pretty(s).expect("summary serializes");
        out.push('\n');
        return out;
    }
    let pct = |n: u64| format_percent(n, s.total);
    let mut out = String::from("| Type | | # references | % total |\n|:---|:---|---:|---:|\n");
    let mut row = |group: &str, label: &str, n: u64| {
        let _ = writeln!(out, "| {group} | {label} | {n} | {} |", pct(n));
    };
    row("**URI**", "", s.uri);
    row("", "valid target", s.uri_valid);
    for d in &s.uri_domains {
        row("", &d.domain, d.count);
    }
    row("", "other", s.uri_other);
    row("**Textual**", "", s.textual);
    row("", "recognized OBO identifier", s.text_obo);
    row("", "recognized other registry prefix", s.text_registry);
    row("", "unknown", s.text_unknown);
    row("**Empty blank node**", "", s.blank);
    row("**Total**", "", s.total);
    if !s.nonstandard_separator.is_empty() {
        out.push_str("\nUnderscore separator:");
        for (k, n) in &s.nonstandard_separator {
            let _ = write!(out, " {k} {n};");
        }
        out.pop();
        out.push('\n');
    }
    out
}

//! Findings and their per-ontology aggregation.

mod render;
mod summary;

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::rdf::{Term, Triple};

pub use render::{format_percent, render_table, TableFormat};
pub use summary::{aggregate, SummaryRow, SummaryTable};

/// Ontology id used for findings that span several ontologies.
pub const COMBINED: &str = "combined";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    FormatUnsupported,
    RarePropertyUse,
    ObjectKindMismatch,
    ObjectKindSuspect,
    XrefBlankTarget,
    XrefUriTarget,
    XrefUnknownPrefix,
    NonUriMatchValue,
    ConflictingPreferred,
    SameAsViolation,
    MissingPairedReference,
    ClusterRefConflict,
    ClusterRefMissing,
    AlignmentSuspect,
    ConflationSuspect,
}

impl Category {
    pub const ALL: [Category; 15] = [
        Category::FormatUnsupported,
        Category::RarePropertyUse,
        Category::ObjectKindMismatch,
        Category::ObjectKindSuspect,
        Category::XrefBlankTarget,
        Category::XrefUriTarget,
        Category::XrefUnknownPrefix,
        Category::NonUriMatchValue,
        Category::ConflictingPreferred,
        Category::SameAsViolation,
        Category::MissingPairedReference,
        Category::ClusterRefConflict,
        Category::ClusterRefMissing,
        Category::AlignmentSuspect,
        Category::ConflationSuspect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::FormatUnsupported => "FormatUnsupported",
            Category::RarePropertyUse => "RarePropertyUse",
            Category::ObjectKindMismatch => "ObjectKindMismatch",
            Category::ObjectKindSuspect => "ObjectKindSuspect",
            Category::XrefBlankTarget => "XrefBlankTarget",
            Category::XrefUriTarget => "XrefUriTarget",
            Category::XrefUnknownPrefix => "XrefUnknownPrefix",
            Category::NonUriMatchValue => "NonUriMatchValue",
            Category::ConflictingPreferred => "ConflictingPreferred",
            Category::SameAsViolation => "SameAsViolation",
            Category::MissingPairedReference => "MissingPairedReference",
            Category::ClusterRefConflict => "ClusterRefConflict",
            Category::ClusterRefMissing => "ClusterRefMissing",
            Category::AlignmentSuspect => "AlignmentSuspect",
            Category::ConflationSuspect => "ConflationSuspect",
        }
    }

    /// Column heading used in the markdown summary.
    pub fn column_label(self) -> &'static str {
        match self {
            Category::RarePropertyUse => "Rare prop.",
            Category::ObjectKindMismatch => "Prop. obj.",
            Category::ObjectKindSuspect => "Prop. obj. (suspect)",
            Category::XrefBlankTarget => "Xref: blank",
            Category::XrefUriTarget => "Xref: URI",
            Category::XrefUnknownPrefix => "Xref: unk.",
            other => other.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

/// What a finding is about: one term, or an unordered pair written in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Subject {
    Term(Term),
    Pair([Term; 2]),
}

impl Subject {
    pub fn pair(a: Term, b: Term) -> Self {
        if a <= b {
            Subject::Pair([a, b])
        } else {
            Subject::Pair([b, a])
        }
    }
}

impl From<Term> for Subject {
    fn from(t: Term) -> Self {
        Subject::Term(t)
    }
}

/// One detected issue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Finding {
    pub category: Category,
    pub severity: Severity,
    pub ontology: String,
    pub subject: Option<Subject>,
    pub evidence: Vec<Triple>,
    pub fixable: bool,
    pub suggested_fix: Option<Triple>,
}

impl Finding {
    pub fn new(category: Category, severity: Severity, ontology: impl Into<String>) -> Self {
        Finding {
            category,
            severity,
            ontology: ontology.into(),
            subject: None,
            evidence: Vec::new(),
            fixable: false,
            suggested_fix: None,
        }
    }

    pub fn with_subject(mut self, subject: impl Into<Subject>) -> Self {
        self.subject = Some(subject.into());
        self
    }

    pub fn with_evidence(mut self, evidence: Vec<Triple>) -> Self {
        self.evidence = evidence;
        self
    }

    pub fn with_fix(mut self, fix: Triple) -> Self {
        self.fixable = true;
        self.suggested_fix = Some(fix);
        self
    }

    pub fn fixable(mut self, fixable: bool) -> Self {
        self.fixable = fixable;
        self
    }
}

/// Writes one JSON object per line.
pub fn write_findings_jsonl<W: Write>(mut out: W, findings: &[Finding]) -> io::Result<()> {
    for f in findings {
        serde_json::to_writer(&mut out, f)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads JSON-lines findings, skipping blank lines.
pub fn read_findings_jsonl<R: BufRead>(input: R) -> io::Result<Vec<Finding>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Finding = serde_json::from_str(&line).map_err(|e| {
            io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {e}", i + 1))
        })?;
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Iri;

    #[test]
    fn jsonl_keys_are_snake_case_and_round_trip() {
        let t = Triple::new(
            Term::iri("http://a").unwrap(),
            Iri::new("http://p").unwrap(),
            Term::literal("v"),
        )
        .unwrap();
        let f = Finding::new(Category::ObjectKindMismatch, Severity::Warning, "ENVO")
            .with_subject(Term::iri("http://a").unwrap())
            .with_evidence(vec![t.clone()])
            .with_fix(t);
        let mut buf = Vec::new();
        write_findings_jsonl(&mut buf, std::slice::from_ref(&f)).unwrap();
        let line = String::from_utf8(buf.clone()).unwrap();
        assert!(line.contains("\"suggested_fix\""));
        assert!(line.contains("\"category\":\"ObjectKindMismatch\""));
        assert_eq!(read_findings_jsonl(&buf[..]).unwrap(), vec![f]);
    }

    #[test]
    fn pair_subject_is_sorted() {
        let a = Term::iri("http://a").unwrap();
        let b = Term::iri("http://b").unwrap();
        assert_eq!(Subject::pair(b.clone(), a.clone()), Subject::pair(a, b));
    }
}

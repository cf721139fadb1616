use std::collections::BTreeMap;
use std::fmt::Write;

use crate::rdf::Triple;

/// Triples to add or remove, each with a one-line rationale.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Patch {
    additions: BTreeMap<Triple, String>,
    removals: BTreeMap<Triple, String>,
}

impl Patch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `triple` unless it is already scheduled for removal.
    pub fn add(&mut self, triple: Triple, rationale: impl Into<String>) -> bool {
        if self.removals.contains_key(&triple) {
            return false;
        }
        self.additions.entry(triple).or_insert_with(|| rationale.into());
        true
    }

    pub fn remove(&mut self, triple: Triple, rationale: impl Into<String>) -> bool {
        if self.additions.contains_key(&triple) {
            return false;
        }
        self.removals.entry(triple).or_insert_with(|| rationale.into());
        true
    }

    pub fn additions(&self) -> impl Iterator<Item = &Triple> {
        self.additions.keys()
    }

    pub fn removals(&self) -> impl Iterator<Item = &Triple> {
        self.removals.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.additions.is_empty() && self.removals.is_empty()
    }

    pub fn extend(&mut self, other: Patch) {
        for (t, r) in other.additions {
            self.add(t, r);
        }
        for (t, r) in other.removals {
            self.remove(t, r);
        }
    }
}

fn sorted_lines(map: &BTreeMap<Triple, String>) -> Vec<(String, &str)> {
    let mut v: Vec<(String, &str)> = map.iter().map(|(t, r)| (t.to_ntriples(), r.as_str())).collect();
    v.sort();
    v
}

/// Serializes a patch as Turtle. Additions are statements sorted by their
/// N-Triples form; removals follow as comments.
pub fn emit_patch(patch: &Patch) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# Generated by ontolint. Additions: {}, removals: {}.",
        patch.additions.len(),
        patch.removals.len()
    );
    for (line, why) in sorted_lines(&patch.additions) {
        let _ = write!(out, "\n# {why}\n{line}\n");
    }
    for (line, why) in sorted_lines(&patch.removals) {
        let _ = write!(out, "\n# {why}\n# remove: {line}\n");
    }
    out
}

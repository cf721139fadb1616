use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rdf::Iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExpectedKind {
    IriOnly,
    LiteralOnly,
}

impl FromStr for ExpectedKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "IriOnly" => Ok(ExpectedKind::IriOnly),
            "LiteralOnly" => Ok(ExpectedKind::LiteralOnly),
            other => Err(format!("expected IriOnly or LiteralOnly, got {other:?}")),
        }
    }
}

impl fmt::Display for ExpectedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpectedKind::IriOnly => "IriOnly",
            ExpectedKind::LiteralOnly => "LiteralOnly",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleSource {
    DeclaredRange,
    UserConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeRule {
    pub predicate: Iri,
    pub expected: ExpectedKind,
    pub source: RuleSource,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("rules line {line}: {message}")]
pub struct RulesError {
    pub line: usize,
    pub message: String,
}

/// Parses a rules file: one `<predicate-iri> IriOnly|LiteralOnly` per line.
/// Blank lines and `#` comments are skipped; a bare IRI without brackets is accepted.
pub fn parse_rules(text: &str) -> Result<Vec<RangeRule>, RulesError> {
    let mut rules: Vec<RangeRule> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| RulesError { line: i + 1, message };
        let mut parts = line.split_whitespace();
        let (Some(pred), Some(kind), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err("expected `<predicate> <IriOnly|LiteralOnly>`".into()));
        };
        let pred = pred.strip_prefix('<').and_then(|p| p.strip_suffix('>')).unwrap_or(pred);
        let predicate = Iri::new(pred).map_err(|e| err(e.to_string()))?;
        let expected = kind.parse().map_err(err)?;
        let rule = RangeRule {
            predicate,
            expected,
            source: RuleSource::UserConfig,
        };
        match rules.iter_mut().find(|r| r.predicate == rule.predicate) {
            Some(existing) => *existing = rule,
            None => rules.push(rule),
        }
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rules_file() {
        let rules = parse_rules("# c\n<http://a> IriOnly\n\nhttp://b LiteralOnly\n").unwrap();
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[1].expected, ExpectedKind::LiteralOnly);
        assert_eq!(rules[0].source, RuleSource::UserConfig);
    }

    #[test]
    fn reports_bad_line() {
        let err = parse_rules("<http://a> Mixed\n").unwrap_err();
        assert_eq!(err.line, 1);
    }
}

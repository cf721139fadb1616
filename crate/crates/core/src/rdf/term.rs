use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::vocab::{rdf, xsd};

/// An IRI stored exactly as it appeared in the source document.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    /// Wraps `value`, rejecting empty strings and strings without a scheme separator.
    pub fn new(value: impl Into<String>) -> Result<Self, TermError> {
        let value = value.into();
        if value.is_empty() || !value.contains(':') {
            return Err(TermError::InvalidIri(value));
        }
        Ok(Iri(value))
    }

    /// Wraps `value` without validation. Callers guarantee the invariant.
    pub(crate) fn new_unchecked(value: impl Into<String>) -> Self {
        Iri(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Iri {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Iri {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Iri::new(text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if label.is_empty() || label.chars().any(|c| c.is_whitespace()) {
            return Err(TermError::InvalidBlankLabel(label));
        }
        Ok(BlankNode(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    /// A plain string literal (`xsd:string`).
    pub fn string(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::new_unchecked(xsd::STRING),
            language: None,
        }
    }

    /// A language-tagged string. The tag is lowercased.
    pub fn lang(lexical: impl Into<String>, language: &str) -> Result<Self, TermError> {
        if language.is_empty()
            || !language
                .split('-')
                .all(|part| !part.is_empty() && part.chars().all(|c| c.is_ascii_alphanumeric()))
        {
            return Err(TermError::InvalidLanguage(language.to_string()));
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype: Iri::new_unchecked(rdf::LANG_STRING),
            language: Some(language.to_ascii_lowercase()),
        })
    }

    /// A typed literal. Using `rdf:langString` here is rejected since it needs a tag.
    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Result<Self, TermError> {
        if datatype.as_str() == rdf::LANG_STRING {
            return Err(TermError::LangStringWithoutTag);
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

/// An RDF term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

/// What kind of node a term is, used for object-kind profiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Iri,
    Blank,
    Literal,
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Result<Self, TermError> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn blank(label: impl Into<String>) -> Result<Self, TermError> {
        BlankNode::new(label).map(Term::Blank)
    }

    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal(Literal::string(lexical))
    }

    pub fn kind(&self) -> TermKind {
        match self {
            Term::Iri(_) => TermKind::Iri,
            Term::Blank(_) => TermKind::Blank,
            Term::Literal(_) => TermKind::Literal,
        }
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    /// Canonical N-Triples form of the term.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        write_term(&mut out, self);
        out
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

// Terms travel through JSON in their N-Triples form.
impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ntriples())
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        super::ntriples::parse_term(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("invalid IRI {0:?}: must be non-empty and contain ':'")]
    InvalidIri(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankLabel(String),
    #[error("invalid language tag {0:?}")]
    InvalidLanguage(String),
    #[error("rdf:langString literal requires a language tag")]
    LangStringWithoutTag,
    #[error("triple predicate must be an IRI")]
    PredicateNotIri,
    #[error("triple subject must be an IRI or blank node")]
    SubjectIsLiteral,
}

/// A subject-predicate-object statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Result<Self, TermError> {
        if matches!(subject, Term::Literal(_)) {
            return Err(TermError::SubjectIsLiteral);
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    /// One N-Triples line without the trailing newline.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        write_term(&mut out, &self.subject);
        out.push(' ');
        write_iri(&mut out, self.predicate.as_str());
        out.push(' ');
        write_term(&mut out, &self.object);
        out.push_str(" .");
        out
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ntriples())
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        super::ntriples::parse_triple_line(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => write_iri(out, iri.as_str()),
        Term::Blank(b) => {
            out.push_str("_:");
            out.push_str(b.label());
        }
        Term::Literal(lit) => {
            out.push('"');
            for c in lit.lexical().chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\r' => out.push_str("\\r"),
                    c => out.push(c),
                }
            }
            out.push('"');
            if let Some(lang) = lit.language() {
                out.push('@');
                out.push_str(lang);
            } else if lit.datatype().as_str() != xsd::STRING {
                out.push_str("^^");
                write_iri(out, lit.datatype().as_str());
            }
        }
    }
}

pub(crate) fn write_iri(out: &mut String, iri: &str) {
    out.push('<');
    for c in iri.chars() {
        match c {
            '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('>');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_requires_scheme_separator() {
        assert!(Iri::new("http://a").is_ok());
        assert!(matches!(Iri::new(""), Err(TermError::InvalidIri(_))));
        assert!(matches!(Iri::new("relative/path"), Err(TermError::InvalidIri(_))));
    }

    #[test]
    fn language_only_on_lang_string() {
        let lit = Literal::lang("chat", "FR").unwrap();
        assert_eq!(lit.datatype().as_str(), rdf::LANG_STRING);
        assert_eq!(lit.language(), Some("fr"));
        assert_eq!(
            Literal::typed("x", Iri::new(rdf::LANG_STRING).unwrap()),
            Err(TermError::LangStringWithoutTag)
        );
        assert_eq!(Literal::string("x").language(), None);
    }

    #[test]
    fn ntriples_escaping() {
        let lit = Term::literal("a \"quoted\"\nline\\");
        assert_eq!(lit.to_ntriples(), r#""a \"quoted\"\nline\\""#);
        let typed = Term::Literal(Literal::typed("1", Iri::new(xsd::INTEGER).unwrap()).unwrap());
        assert_eq!(
            typed.to_ntriples(),
            "\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>"
        );
        let odd = Term::Iri(Iri::new_unchecked("http://a/b c"));
        assert_eq!(odd.to_ntriples(), "<http://a/b\\u0020c>");
    }

    #[test]
    fn literal_subject_rejected() {
        let p = Iri::new("http://p").unwrap();
        assert_eq!(
            Triple::new(Term::literal("x"), p, Term::literal("y")),
            Err(TermError::SubjectIsLiteral)
        );
    }
}

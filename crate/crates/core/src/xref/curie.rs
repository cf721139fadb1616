use serde::{Deserialize, Serialize};

use crate::rdf::iri::looks_like_absolute_iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Separator {
    Colon,
    Underscore,
}

impl Separator {
    pub fn as_char(self) -> char {
        match self {
            Separator::Colon => ':',
            Separator::Underscore => '_',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurieParse {
    pub prefix: String,
    pub local_id: String,
    pub separator: Separator,
    pub raw: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a compact identifier: {0:?}")]
pub struct NotACurie(pub String);

fn split_at(text: &str, idx: usize, separator: Separator) -> Option<CurieParse> {
    let (prefix, local) = (&text[..idx], &text[idx + 1..]);
    if prefix.is_empty() || local.is_empty() || prefix.chars().any(char::is_whitespace) {
        return None;
    }
    Some(CurieParse {
        prefix: prefix.to_string(),
        local_id: local.to_string(),
        separator,
        raw: text.to_string(),
    })
}

/// Splits `Prefix:Local`, falling back to the last underscore for
/// OBO-style `GO_0008150`. Absolute IRIs are rejected.
pub fn parse_curie(text: &str) -> Result<CurieParse, NotACurie> {
    if looks_like_absolute_iri(text) {
        return Err(NotACurie(text.to_string()));
    }
    text.find(':')
        .and_then(|i| split_at(text, i, Separator::Colon))
        .or_else(|| text.rfind('_').and_then(|i| split_at(text, i, Separator::Underscore)))
        .ok_or_else(|| NotACurie(text.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn colon_and_underscore_forms() {
        let c = parse_curie("MESH:C536189").unwrap();
        assert_eq!((c.prefix.as_str(), c.local_id.as_str(), c.separator), ("MESH", "C536189", Separator::Colon));
        let u = parse_curie("GO_0008150").unwrap();
        assert_eq!((u.prefix.as_str(), u.local_id.as_str(), u.separator), ("GO", "0008150", Separator::Underscore));
        let s = parse_curie("SNOMEDCT_US:123").unwrap();
        assert_eq!(s.prefix, "SNOMEDCT_US");
    }

    #[test]
    fn rejects_iris_and_unsplittable() {
        assert!(parse_curie("http://example.org/x").is_err());
        assert!(parse_curie("plain words").is_err());
        assert!(parse_curie(":x").is_err());
        assert!(parse_curie("x_").is_err());
    }

    proptest! {
        #[test]
        fn reassembles(text in "[A-Za-z_:0-9 ./]{0,20}") {
            if let Ok(c) = parse_curie(&text) {
                prop_assert_eq!(format!("{}{}{}", c.prefix, c.separator.as_char(), c.local_id), c.raw.clone());
                prop_assert_eq!(c.raw, text);
            }
        }
    }
}

//! IRI helpers: scheme detection, reference resolution, basic well-formedness.

/// Returns the scheme if `s` starts with `scheme ":"`.
pub fn scheme(s: &str) -> Option<&str> {
    let colon = s.find(':')?;
    let candidate = &s[..colon];
    let mut chars = candidate.chars();
    let first = chars.next()?;
    if !first.is_ascii_alphabetic() {
        return None;
    }
    chars
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        .then_some(candidate)
}

pub fn is_absolute(s: &str) -> bool {
    scheme(s).is_some()
}

/// True for text that reads as an absolute hierarchical IRI (`scheme://...`)
/// or a `urn:` name. Compact identifiers such as `MESH:C536189` do not qualify
/// even though they are syntactically scheme-prefixed.
pub fn looks_like_absolute_iri(s: &str) -> bool {
    let Some(scheme) = scheme(s) else {
        return false;
    };
    if s.chars().any(|c| c.is_whitespace()) {
        return false;
    }
    let rest = &s[scheme.len() + 1..];
    if scheme.eq_ignore_ascii_case("urn") {
        return rest.contains(':');
    }
    rest.starts_with("//") && rest.len() > 2
}

/// Basic well-formedness: valid scheme, no forbidden characters, and an
/// authority for http(s).
pub fn is_well_formed(s: &str) -> bool {
    let Some(scheme) = scheme(s) else {
        return false;
    };
    if s
        .chars()
        .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`'))
    {
        return false;
    }
    let rest = &s[scheme.len() + 1..];
    if scheme.eq_ignore_ascii_case("http") || scheme.eq_ignore_ascii_case("https") {
        return host(s).is_some_and(|h| !h.is_empty()) && rest.starts_with("//");
    }
    !rest.is_empty()
}

/// Lowercased host of a hierarchical IRI, without userinfo or port.
pub fn host(s: &str) -> Option<String> {
    let scheme = scheme(s)?;
    let rest = s[scheme.len() + 1..].strip_prefix("//")?;
    let end = rest.find(['/', '?', '#']).unwrap_or(rest.len());
    let authority = &rest[..end];
    let hostport = authority.rsplit_once('@').map_or(authority, |(_, h)| h);
    let host = if hostport.starts_with('[') {
        hostport.split_once(']').map_or(hostport, |(h, _)| h).trim_start_matches('[')
    } else {
        hostport.split(':').next().unwrap_or("")
    };
    if host.is_empty() {
        return None;
    }
    Some(host.to_ascii_lowercase())
}

struct Parts<'a> {
    scheme: Option<&'a str>,
    authority: Option<&'a str>,
    path: &'a str,
    query: Option<&'a str>,
    fragment: Option<&'a str>,
}

fn split(s: &str) -> Parts<'_> {
    let (rest, fragment) = match s.find('#') {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (rest, query) = match rest.find('?') {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    let (scheme_part, rest) = match scheme(rest) {
        Some(sc) => (Some(sc), &rest[sc.len() + 1..]),
        None => (None, rest),
    };
    let (authority, path) = match rest.strip_prefix("//") {
        Some(after) => {
            let end = after.find('/').unwrap_or(after.len());
            (Some(&after[..end]), &after[end..])
        }
        None => (None, rest),
    };
    Parts {
        scheme: scheme_part,
        authority,
        path,
        query,
        fragment,
    }
}

fn remove_dot_segments(path: &str) -> String {
    let mut output: Vec<&str> = Vec::new();
    let mut input = path;
    let absolute = path.starts_with('/');
    if absolute {
        input = &input[1..];
    }
    let segments: Vec<&str> = input.split('/').collect();
    let last = segments.len().saturating_sub(1);
    let mut trailing_slash = false;
    for (i, seg) in segments.iter().enumerate() {
        match *seg {
            "." => trailing_slash = i == last,
            ".." => {
                output.pop();
                trailing_slash = i == last;
            }
            s => {
                output.push(s);
                trailing_slash = false;
            }
        }
    }
    let mut out = String::new();
    if absolute {
        out.push('/');
    }
    out.push_str(&output.join("/"));
    if trailing_slash && !out.ends_with('/') {
        out.push('/');
    }
    out
}

fn merge_paths(base: &Parts<'_>, reference: &str) -> String {
    if base.authority.is_some() && base.path.is_empty() {
        return format!("/{reference}");
    }
    match base.path.rfind('/') {
        Some(i) => format!("{}{}", &base.path[..=i], reference),
        None => reference.to_string(),
    }
}

/// Resolves `reference` against an absolute `base`.
pub fn resolve(base: &str, reference: &str) -> String {
    let r = split(reference);
    let b = split(base);
    let (scheme, authority, path, query);
    if r.scheme.is_some() {
        scheme = r.scheme;
        authority = r.authority;
        path = remove_dot_segments(r.path);
        query = r.query;
    } else {
        scheme = b.scheme;
        if r.authority.is_some() {
            authority = r.authority;
            path = remove_dot_segments(r.path);
            query = r.query;
        } else {
            authority = b.authority;
            if r.path.is_empty() {
                path = b.path.to_string();
                query = r.query.or(b.query);
            } else {
                path = if r.path.starts_with('/') {
                    remove_dot_segments(r.path)
                } else {
                    remove_dot_segments(&merge_paths(&b, r.path))
                };
                query = r.query;
            }
        }
    }
    let mut out = String::new();
    if let Some(s) = scheme {
        out.push_str(s);
        out.push(':');
    }
    if let Some(a) = authority {
        out.push_str("//");
        out.push_str(a);
    }
    out.push_str(&path);
    if let Some(q) = query {
        out.push('?');
        out.push_str(q);
    }
    if let Some(f) = r.fragment {
        out.push('#');
        out.push_str(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rfc3986_normal_examples() {
        let base = "http://a/b/c/d;p?q";
        let cases = [
            ("g:h", "g:h"),
            ("g", "http://a/b/c/g"),
            ("./g", "http://a/b/c/g"),
            ("g/", "http://a/b/c/g/"),
            ("/g", "http://a/g"),
            ("//g", "http://g"),
            ("?y", "http://a/b/c/d;p?y"),
            ("g?y", "http://a/b/c/g?y"),
            ("#s", "http://a/b/c/d;p?q#s"),
            ("g#s", "http://a/b/c/g#s"),
            ("", "http://a/b/c/d;p?q"),
            (".", "http://a/b/c/"),
            ("./", "http://a/b/c/"),
            ("..", "http://a/b/"),
            ("../", "http://a/b/"),
            ("../g", "http://a/b/g"),
            ("../..", "http://a/"),
            ("../../g", "http://a/g"),
        ];
        for (r, want) in cases {
            assert_eq!(resolve(base, r), want, "reference {r:?}");
        }
    }

    #[test]
    fn curies_are_not_absolute_iris() {
        assert!(looks_like_absolute_iri("http://example.org/x"));
        assert!(looks_like_absolute_iri("urn:isbn:123"));
        assert!(!looks_like_absolute_iri("MESH:C536189"));
        assert!(!looks_like_absolute_iri("GO_0008150"));
    }

    #[test]
    fn well_formedness() {
        assert!(is_well_formed("http://purl.obolibrary.org/obo/RO_0002162"));
        assert!(!is_well_formed("http:/purl.obolibrary.org/obo/chebi/charge"));
        assert!(!is_well_formed("http://exa mple.org"));
        assert!(is_well_formed("urn:x:y"));
    }

    #[test]
    fn host_extraction() {
        assert_eq!(host("https://en.wikipedia.org/wiki/Apple").as_deref(), Some("en.wikipedia.org"));
        assert_eq!(host("http://user@Example.ORG:8080/x").as_deref(), Some("example.org"));
        assert_eq!(host("urn:x"), None);
    }
}

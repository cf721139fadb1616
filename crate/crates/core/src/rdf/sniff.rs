use std::borrow::Cow;
use std::io::{self, Read};

use serde::{Deserialize, Serialize};

use super::ntriples::parse_triple_line;

const SNIFF_WINDOW: usize = 4096;
const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RdfFormat {
    NTriples,
    Turtle,
    RdfXml,
    OwlFunctional,
    OwlXml,
    Unknown,
}

impl RdfFormat {
    pub fn is_supported(self) -> bool {
        matches!(self, RdfFormat::NTriples | RdfFormat::Turtle)
    }

    pub fn name(self) -> &'static str {
        match self {
            RdfFormat::NTriples => "N-Triples",
            RdfFormat::Turtle => "Turtle",
            RdfFormat::RdfXml => "RDF/XML",
            RdfFormat::OwlFunctional => "OWL functional syntax",
            RdfFormat::OwlXml => "OWL/XML",
            RdfFormat::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormatReport {
    pub detected: RdfFormat,
    pub supported: bool,
    /// Leading content the decision was based on.
    pub evidence: String,
}

pub fn is_gzip(bytes: &[u8]) -> bool {
    bytes.starts_with(&GZIP_MAGIC)
}

/// Decompresses gzip input, passing anything else through.
pub fn decompress_if_gzip(bytes: &[u8]) -> io::Result<Cow<'_, [u8]>> {
    if !is_gzip(bytes) {
        return Ok(Cow::Borrowed(bytes));
    }
    let mut out = Vec::new();
    flate2::read::MultiGzDecoder::new(bytes).read_to_end(&mut out)?;
    Ok(Cow::Owned(out))
}

fn head(bytes: &[u8]) -> Cow<'_, [u8]> {
    if is_gzip(bytes) {
        let mut out = Vec::with_capacity(SNIFF_WINDOW);
        let _ = flate2::read::MultiGzDecoder::new(bytes)
            .take(SNIFF_WINDOW as u64)
            .read_to_end(&mut out);
        Cow::Owned(out)
    } else {
        Cow::Borrowed(&bytes[..bytes.len().min(SNIFF_WINDOW)])
    }
}

/// Skips whitespace, a byte-order mark and `#` comment lines.
fn leading_content(text: &str) -> &str {
    let mut rest = text.trim_start_matches('\u{feff}');
    loop {
        rest = rest.trim_start();
        if rest.starts_with('#') {
            rest = rest.find('\n').map_or("", |i| &rest[i + 1..]);
        } else {
            return rest;
        }
    }
}

fn xml_root_name(text: &str) -> Option<&str> {
    let mut rest = text;
    loop {
        let start = rest.find('<')?;
        rest = &rest[start..];
        if rest.starts_with("<?") {
            rest = &rest[rest.find("?>")? + 2..];
        } else if rest.starts_with("<!--") {
            rest = &rest[rest.find("-->")? + 3..];
        } else if rest.starts_with("<!") {
            rest = &rest[rest.find('>')? + 1..];
        } else {
            let name = &rest[1..];
            let end = name
                .find(|c: char| c.is_whitespace() || c == '>' || c == '/')
                .unwrap_or(name.len());
            return Some(&name[..end]);
        }
    }
}

fn starts_with_ignore_case(text: &str, prefix: &str) -> bool {
    text.len() >= prefix.len() && text.as_bytes()[..prefix.len()].eq_ignore_ascii_case(prefix.as_bytes())
}

/// Classifies a document by its leading content. Gzip input is inspected after decompression.
pub fn sniff_format(bytes: &[u8]) -> FormatReport {
    let head = head(bytes);
    let text = String::from_utf8_lossy(&head);
    let content = leading_content(&text);
    let evidence: String = content.chars().take(64).collect();

    let detected = if content.is_empty() {
        RdfFormat::Unknown
    } else if content.starts_with("<?xml") || content.starts_with("<rdf:RDF") || content.starts_with("<Ontology") {
        match xml_root_name(content) {
            Some(name) if name == "RDF" || name.ends_with(":RDF") => RdfFormat::RdfXml,
            Some(name) if name == "Ontology" || name.ends_with(":Ontology") => RdfFormat::OwlXml,
            _ => RdfFormat::Unknown,
        }
    } else if content.starts_with("Prefix(") || content.starts_with("Ontology(") {
        RdfFormat::OwlFunctional
    } else if content.starts_with("@prefix")
        || content.starts_with("@base")
        || starts_with_ignore_case(content, "PREFIX ")
        || starts_with_ignore_case(content, "BASE ")
    {
        RdfFormat::Turtle
    } else {
        let first_line = content.lines().next().unwrap_or("");
        if parse_triple_line(first_line).is_ok() {
            RdfFormat::NTriples
        } else {
            RdfFormat::Unknown
        }
    };
    FormatReport {
        detected,
        supported: detected.is_supported(),
        evidence,
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::parser::{parse_text, Mode};
use super::{decompress_if_gzip, sniff_format, Graph, ParseError, RdfFormat, Term};
use crate::reporting::{Category, Finding, Severity};

#[derive(Debug, thiserror::Error)]
pub enum RdfError {
    #[error("unsupported format: {}", .0.name())]
    Unsupported(RdfFormat),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
    #[error("decompression failed: {0}")]
    Io(#[from] std::io::Error),
}

/// Parses `bytes` in the given format. Gzip input is decompressed first.
pub fn parse_rdf(bytes: &[u8], format: RdfFormat) -> Result<Graph, RdfError> {
    let mode = match format {
        RdfFormat::Turtle => Mode::Turtle,
        RdfFormat::NTriples => Mode::NTriples,
        other => return Err(RdfError::Unsupported(other)),
    };
    let bytes = decompress_if_gzip(bytes)?;
    let text = std::str::from_utf8(&bytes).map_err(|_| RdfError::InvalidUtf8)?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    Ok(parse_text(text, mode, None)?)
}

/// A named input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputSpec {
    pub id: String,
    pub path: PathBuf,
}

impl InputSpec {
    /// Accepts `ID=PATH` or a bare path, whose file stem becomes the id.
    pub fn parse(arg: &str) -> Self {
        if let Some((id, path)) = arg.split_once('=') {
            if !id.is_empty() && !id.contains(['/', '\\']) {
                return InputSpec {
                    id: id.to_string(),
                    path: PathBuf::from(path),
                };
            }
        }
        let path = PathBuf::from(arg);
        InputSpec {
            id: stem_id(&path),
            path,
        }
    }
}

fn stem_id(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = name.strip_suffix(".gz").unwrap_or(&name);
    match name.rsplit_once('.') {
        Some((stem, _)) if !stem.is_empty() => stem.to_string(),
        _ => name.to_string(),
    }
}

/// Named graphs, one per ontology, plus where each came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dataset {
    pub graphs: BTreeMap<String, Graph>,
    pub provenance: BTreeMap<String, PathBuf>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: impl Into<String>, graph: Graph, path: Option<PathBuf>) {
        let id = id.into();
        if let Some(p) = path {
            self.provenance.insert(id.clone(), p);
        }
        self.graphs.insert(id, graph);
    }

    pub fn get(&self, id: &str) -> Option<&Graph> {
        self.graphs.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Graph)> {
        self.graphs.iter().map(|(k, g)| (k.as_str(), g))
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn triple_count(&self) -> usize {
        self.graphs.values().map(Graph::len).sum()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: input is not valid UTF-8", path.display())]
    InvalidUtf8 { path: PathBuf },
    #[error("ontology id {0:?} given more than once")]
    DuplicateId(String),
}

/// A loaded dataset together with findings for inputs that could not be read as RDF.
#[derive(Debug, Default)]
pub struct LoadOutcome {
    pub dataset: Dataset,
    pub findings: Vec<Finding>,
}

enum Loaded {
    Graph(Graph),
    Unsupported(RdfFormat),
}

fn format_from_extension(path: &Path) -> RdfFormat {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().to_ascii_lowercase())
        .unwrap_or_default();
    let name = name.strip_suffix(".gz").unwrap_or(&name);
    if name.ends_with(".nt") {
        RdfFormat::NTriples
    } else if name.ends_with(".ttl") {
        RdfFormat::Turtle
    } else {
        RdfFormat::Unknown
    }
}

fn load_one(spec: &InputSpec) -> Result<Loaded, LoadError> {
    let raw = fs::read(&spec.path).map_err(|source| LoadError::Io {
        path: spec.path.clone(),
        source,
    })?;
    let mut format = sniff_format(&raw).detected;
    if format == RdfFormat::Unknown {
        format = format_from_extension(&spec.path);
    }
    if !format.is_supported() {
        return Ok(Loaded::Unsupported(format));
    }
    match parse_rdf(&raw, format) {
        Ok(g) => Ok(Loaded::Graph(g)),
        Err(RdfError::Parse(source)) => Err(LoadError::Parse {
            path: spec.path.clone(),
            source,
        }),
        Err(RdfError::InvalidUtf8) => Err(LoadError::InvalidUtf8 {
            path: spec.path.clone(),
        }),
        Err(RdfError::Io(source)) => Err(LoadError::Io {
            path: spec.path.clone(),
            source,
        }),
        Err(RdfError::Unsupported(f)) => Ok(Loaded::Unsupported(f)),
    }
}

fn file_term(path: &Path) -> Option<Term> {
    let abs = fs::canonicalize(path).unwrap_or_else(|_| path.to_path_buf());
    let s = abs.to_string_lossy().replace('\\', "/");
    let s = if s.starts_with('/') { s } else { format!("/{s}") };
    Term::iri(format!("file://{s}")).ok()
}

/// Loads every input. Unsupported formats become `FormatUnsupported`
/// findings; syntax errors abort the load. `jobs` of 0 means one per core.
pub fn load_dataset(inputs: &[InputSpec], jobs: usize) -> Result<LoadOutcome, LoadError> {
    let mut seen = std::collections::BTreeSet::new();
    for spec in inputs {
        if !seen.insert(spec.id.as_str()) {
            return Err(LoadError::DuplicateId(spec.id.clone()));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let results: Vec<Result<Loaded, LoadError>> =
        pool.install(|| inputs.par_iter().map(load_one).collect());
    let mut outcome = LoadOutcome::default();
    for (spec, result) in inputs.iter().zip(results) {
        match result? {
            Loaded::Graph(g) => outcome.dataset.insert(spec.id.clone(), g, Some(spec.path.clone())),
            Loaded::Unsupported(format) => {
                let mut f = Finding::new(Category::FormatUnsupported, Severity::Error, spec.id.clone());
                f.subject = file_term(&spec.path).map(Into::into);
                log_unsupported(spec, format);
                outcome.findings.push(f);
            }
        }
    }
    Ok(outcome)
}

fn log_unsupported(spec: &InputSpec, format: RdfFormat) {
    if !crate::quiet() {
        eprintln!(
            "warning: {}: {} input is not supported, skipping",
            spec.path.display(),
            format.name()
        );
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::is_gzip;

    #[test]
    fn input_spec_forms() {
        assert_eq!(InputSpec::parse("data/ENVO.ttl").id, "ENVO");
        assert_eq!(InputSpec::parse("data/x.nt.gz").id, "x");
        let s = InputSpec::parse("CHEBI=/tmp/a.ttl");
        assert_eq!(s.id, "CHEBI");
        assert_eq!(s.path, PathBuf::from("/tmp/a.ttl"));
    }

    #[test]
    fn parse_rdf_rejects_owl() {
        assert!(matches!(
            parse_rdf(b"Ontology(<http://x>)", RdfFormat::OwlFunctional),
            Err(RdfError::Unsupported(RdfFormat::OwlFunctional))
        ));
    }

    #[test]
    fn gzip_is_transparent() {
        use std::io::Write;
        let nt = b"<http://a> <http://p> \"x\" .\n";
        let mut enc = flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::default());
        enc.write_all(nt).unwrap();
        let gz = enc.finish().unwrap();
        assert!(is_gzip(&gz));
        assert_eq!(parse_rdf(&gz, RdfFormat::NTriples).unwrap(), parse_rdf(nt, RdfFormat::NTriples).unwrap());
    }
}

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use sha2::{Digest, Sha256};

use super::{LinkGraph, LinkGraphBuilder};
use crate::rdf::vocab::dbo;

#[derive(Debug, Clone)]
pub struct FetchOptions {
    pub concurrency: usize,
    pub retries: u32,
    pub backoff: Duration,
    pub timeout: Duration,
}

impl Default for FetchOptions {
    fn default() -> Self {
        FetchOptions {
            concurrency: 4,
            retries: 3,
            backoff: Duration::from_millis(500),
            timeout: Duration::from_secs(30),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FetchError {
    #[error("request failed after retries: {0}")]
    Network(String),
    #[error("malformed SPARQL results: {0}")]
    Malformed(String),
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Debug)]
pub struct FetchOutcome {
    pub graph: LinkGraph,
    /// Seeds that could not be fetched or parsed, with the reason.
    pub errors: Vec<(String, FetchError)>,
    /// HTTP requests issued, retries included.
    pub requests: usize,
}

/// The query sent for each seed.
pub fn link_query(seed: &str) -> String {
    format!("SELECT ?o WHERE {{ <{seed}> <{}> ?o }}", dbo::WIKI_PAGE_WIKI_LINK)
}

pub fn cache_path(cache_dir: &Path, endpoint: &str, seed: &str) -> PathBuf {
    let mut h = Sha256::new();
    h.update(endpoint.as_bytes());
    h.update(b"\n");
    h.update(seed.as_bytes());
    cache_dir.join(format!("{}.json", hex::encode(h.finalize())))
}

/// IRI values bound in a SPARQL JSON results document, in order.
pub fn parse_sparql_json(body: &str) -> Result<Vec<String>, FetchError> {
    let v: serde_json::Value = serde_json::from_str(body).map_err(|e| FetchError::Malformed(e.to_string()))?;
    let bindings = v
        .pointer("/results/bindings")
        .and_then(|b| b.as_array())
        .ok_or_else(|| FetchError::Malformed("missing results.bindings".into()))?;
    let mut out = Vec::new();
    for b in bindings {
        let Some(obj) = b.as_object() else {
            return Err(FetchError::Malformed("binding is not an object".into()));
        };
        for cell in obj.values() {
            if cell.get("type").and_then(|t| t.as_str()) == Some("uri") {
                if let Some(value) = cell.get("value").and_then(|v| v.as_str()) {
                    out.push(value.to_string());
                }
            }
        }
    }
    Ok(out)
}

fn write_atomic(path: &Path, body: &str) -> io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, body)?;
    fs::rename(tmp, path)
}

fn retryable(e: &ureq::Error) -> bool {
    match e {
        ureq::Error::StatusCode(code) => *code == 429 || *code >= 500,
        _ => true,
    }
}

fn request(agent: &ureq::Agent, endpoint: &str, seed: &str, opts: &FetchOptions, counter: &AtomicUsize) -> Result<String, FetchError> {
    let mut delay = opts.backoff;
    let mut attempt = 0;
    loop {
        counter.fetch_add(1, Ordering::Relaxed);
        let result = agent
            .get(endpoint)
            .query("query", link_query(seed))
            .header("Accept", "application/sparql-results+json")
            .call()
            .and_then(|mut r| r.body_mut().with_config().limit(64 << 20).read_to_string());
        match result {
            Ok(body) => return Ok(body),
            Err(e) if attempt < opts.retries && retryable(&e) => {
                attempt += 1;
                thread::sleep(delay);
                delay = delay.saturating_mul(2);
            }
            Err(e) => return Err(FetchError::Network(e.to_string())),
        }
    }
}

fn fetch_seed(
    agent: &ureq::Agent,
    endpoint: &str,
    seed: &str,
    cache_dir: &Path,
    opts: &FetchOptions,
    counter: &AtomicUsize,
) -> Result<Vec<String>, FetchError> {
    let path = cache_path(cache_dir, endpoint, seed);
    if let Ok(body) = fs::read_to_string(&path) {
        return parse_sparql_json(&body);
    }
    let body = request(agent, endpoint, seed, opts, counter)?;
    let links = parse_sparql_json(&body)?;
    write_atomic(&path, &body).map_err(|e| FetchError::Cache(e.to_string()))?;
    Ok(links)
}

/// Fetches outbound wiki links for every seed and joins them into one
/// undirected graph. Responses are cached per (endpoint, seed); failures
/// are recorded per seed and the run continues.
pub fn fetch_link_graph(endpoint: &str, seeds: &[String], cache_dir: &Path, opts: &FetchOptions) -> FetchOutcome {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(opts.timeout))
        .build()
        .into();
    let counter = AtomicUsize::new(0);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Vec<String>, FetchError>>>> = Mutex::new(vec![None; seeds.len()]);
    let workers = opts.concurrency.max(1).min(seeds.len().max(1));
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= seeds.len() {
                    break;
                }
                let r = fetch_seed(&agent, endpoint, &seeds[i], cache_dir, opts, &counter);
                results.lock().expect("results lock")[i] = Some(r);
            });
        }
    });
    let mut b = LinkGraphBuilder::new();
    let mut errors = Vec::new();
    for (seed, r) in seeds.iter().zip(results.into_inner().expect("results lock")) {
        b.seed(seed.clone());
        match r.expect("every seed processed") {
            Ok(links) => {
                for l in links {
                    b.edge(seed.clone(), l);
                }
            }
            Err(e) => errors.push((seed.clone(), e)),
        }
    }
    FetchOutcome {
        graph: b.build(),
        errors,
        requests: counter.into_inner(),
    }
}

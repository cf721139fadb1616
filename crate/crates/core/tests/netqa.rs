use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use ontolint::netqa::{
    connected_components, detect_outliers, fetch_link_graph, find_bridges, label_propagation, FetchOptions,
    LinkGraph, OutlierEvidence, OutlierOptions, Tactic, DEFAULT_ROUND_CAP,
};

fn fix_graph() -> LinkGraph {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/graph/fix_graph.tsv");
    LinkGraph::parse_edge_list(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn short(g: &LinkGraph, i: usize) -> &str {
    g.name(i).rsplit('/').next().unwrap()
}

#[test]
fn fixture_components() {
    let g = fix_graph();
    let sizes: Vec<usize> = connected_components(&g).iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![8, 3]);
}

#[test]
fn fixture_bridges() {
    let g = fix_graph();
    let mut names: Vec<(String, String)> = find_bridges(&g)
        .into_iter()
        .map(|(a, b)| (short(&g, a).to_string(), short(&g, b).to_string()))
        .collect();
    names.sort();
    assert_eq!(
        names,
        vec![
            ("A4".to_string(), "B1".to_string()),
            ("P1".to_string(), "P2".to_string()),
            ("P2".to_string(), "P3".to_string())
        ]
    );
}

#[test]
fn fixture_communities_are_the_cliques() {
    let g = fix_graph();
    let giant: BTreeSet<usize> = connected_components(&g)[0].iter().copied().collect();
    let h = g.induced(&giant, &BTreeSet::new());
    let communities: Vec<Vec<&str>> = label_propagation(&h, 42, DEFAULT_ROUND_CAP)
        .iter()
        .map(|c| c.iter().map(|&i| short(&h, i)).collect())
        .collect();
    assert_eq!(communities, vec![vec!["A1", "A2", "A3", "A4"], vec!["B1", "B2", "B3", "B4"]]);
}

#[test]
fn fixture_pipeline() {
    let g = fix_graph();
    let found = detect_outliers(&g, &OutlierOptions::default());
    let by = |t: Tactic| -> Vec<String> {
        found
            .iter()
            .filter(|c| c.tactic == t)
            .map(|c| c.node.rsplit('/').next().unwrap().to_string())
            .collect()
    };
    assert_eq!(by(Tactic::T1), vec!["P1", "P2", "P3"]);
    assert_eq!(by(Tactic::T2), vec!["B1", "B2", "B3", "B4"]);
    assert!(by(Tactic::T3).is_empty());
    assert!(found
        .iter()
        .filter(|c| c.tactic == Tactic::T2)
        .all(|c| matches!(&c.evidence, OutlierEvidence::Bridge(a, b) if a.ends_with("A4") && b.ends_with("B1"))));
    for frac in [0.1, 0.5, 1.0] {
        let opts = OutlierOptions {
            max_keep_frac: frac,
            ..OutlierOptions::default()
        };
        let t1: Vec<_> = detect_outliers(&g, &opts).into_iter().filter(|c| c.tactic == Tactic::T1).collect();
        assert_eq!(t1.len(), 3);
    }
}

struct Mock {
    url: String,
    hits: Arc<AtomicUsize>,
    paths: Arc<std::sync::Mutex<Vec<String>>>,
}

fn mock_endpoint(respond: fn(&str) -> (u16, String)) -> Mock {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/sparql", listener.local_addr().unwrap());
    let hits = Arc::new(AtomicUsize::new(0));
    let paths = Arc::new(std::sync::Mutex::new(Vec::new()));
    let (h, p) = (hits.clone(), paths.clone());
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut first = String::new();
            reader.read_line(&mut first).unwrap();
            let mut accept = String::new();
            loop {
                let mut line = String::new();
                if reader.read_line(&mut line).unwrap() == 0 || line == "\r\n" {
                    break;
                }
                if line.to_ascii_lowercase().starts_with("accept:") {
                    accept = line.trim().to_string();
                }
            }
            h.fetch_add(1, Ordering::SeqCst);
            let target = first.split_whitespace().nth(1).unwrap_or("").to_string();
            p.lock().unwrap().push(format!("{target} {accept}"));
            let (status, body) = respond(&target);
            let _ = write!(
                stream,
                "HTTP/1.1 {status} X\r\nContent-Type: application/sparql-results+json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
        }
    });
    Mock { url, hits, paths }
}

fn two_links(target: &str) -> (u16, String) {
    if target.contains("Empty") {
        return (200, r#"{"head":{"vars":["o"]},"results":{"bindings":[]}}"#.into());
    }
    if target.contains("Broken") {
        return (200, "not json".into());
    }
    (
        200,
        r#"{"head":{"vars":["o"]},"results":{"bindings":[
            {"o":{"type":"uri","value":"http://dbpedia.org/resource/L1"}},
            {"o":{"type":"uri","value":"http://dbpedia.org/resource/L2"}}]}}"#
            .into(),
    )
}

fn quick() -> FetchOptions {
    FetchOptions {
        backoff: Duration::from_millis(5),
        ..FetchOptions::default()
    }
}

#[test]
fn fetch_builds_graph_and_caches() {
    let mock = mock_endpoint(two_links);
    let cache = tempfile::tempdir().unwrap();
    let seeds = vec!["http://dbpedia.org/resource/Seed".to_string()];
    let first = fetch_link_graph(&mock.url, &seeds, cache.path(), &quick());
    assert!(first.errors.is_empty());
    assert_eq!(first.graph.node_count(), 3);
    assert_eq!(first.graph.edge_count(), 2);
    assert_eq!(mock.hits.load(Ordering::SeqCst), 1);
    let logged = mock.paths.lock().unwrap()[0].clone();
    assert!(logged.contains("query=SELECT"), "{logged}");
    assert!(logged.contains("wikiPageWikiLink"), "{logged}");
    assert!(logged.to_ascii_lowercase().contains("accept: application/sparql-results+json"), "{logged}");

    let second = fetch_link_graph(&mock.url, &seeds, cache.path(), &quick());
    assert_eq!(mock.hits.load(Ordering::SeqCst), 1);
    assert_eq!(second.requests, 0);
    assert_eq!(second.graph, first.graph);
}

#[test]
fn fetch_keeps_empty_seeds_and_skips_broken_ones() {
    let mock = mock_endpoint(two_links);
    let cache = tempfile::tempdir().unwrap();
    let seeds = vec![
        "http://dbpedia.org/resource/Empty".to_string(),
        "http://dbpedia.org/resource/Broken".to_string(),
        "http://dbpedia.org/resource/Seed".to_string(),
    ];
    let out = fetch_link_graph(&mock.url, &seeds, cache.path(), &quick());
    assert_eq!(out.errors.len(), 1);
    assert!(out.errors[0].0.ends_with("Broken"));
    assert!(out.graph.index_of("http://dbpedia.org/resource/Empty").is_some());
    assert_eq!(out.graph.edge_count(), 2);
}

#[test]
fn fetch_retries_server_errors() {
    let mock = mock_endpoint(|_| (503, "busy".into()));
    let cache = tempfile::tempdir().unwrap();
    let opts = FetchOptions {
        retries: 2,
        ..quick()
    };
    let out = fetch_link_graph(&mock.url, &["http://dbpedia.org/resource/X".to_string()], cache.path(), &opts);
    assert_eq!(out.errors.len(), 1);
    assert_eq!(mock.hits.load(Ordering::SeqCst), 3);
    assert_eq!(out.requests, 3);
}

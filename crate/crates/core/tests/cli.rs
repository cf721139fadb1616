use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ontolint"))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn p(rel: &str) -> String {
    fixtures().join(rel).to_str().unwrap().to_string()
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
}

#[test]
fn missing_input_exits_two() {
    let out = run(&["lint", "missing.ttl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lint"));
    assert_eq!(run(&["lint", "--bogus-flag", "x.ttl"]).status.code(), Some(2));
}

#[test]
fn lint_obo_exits_one_with_findings() {
    let out = run(&[
        "--quiet",
        "lint",
        "--rules",
        &p("obo/rules.txt"),
        &p("obo/ENVO.ttl"),
        &p("obo/FOODON.ttl"),
        &p("obo/CHEBI.ttl"),
        &p("obo/CARO.owl"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 14);
    assert!(out.stderr.is_empty());
}

#[test]
fn clean_check_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = dir.path().join("tiny.ttl");
    std::fs::write(&ttl, "<http://x/a> <http://www.w3.org/2000/01/rdf-schema#label> \"a\" .\n").unwrap();
    let out = run(&["-q", "lint", ttl.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn output_dir_collects_artifacts_and_inputs_are_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let cso = p("cso/cso.ttl");
    let before = std::fs::read(&cso).unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = run(&["-q", "--output-dir", out_dir, "cso", "check", "--equiv-props", &p("cso/equiv_props.txt"), &cso]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    assert!(!read(dir.path(), "cso.findings.jsonl").is_empty());
    assert!(String::from_utf8(read(dir.path(), "cso.patch.ttl")).unwrap().starts_with("# Generated by ontolint."));
    let out = run(&["-q", "--output-dir", out_dir, "cso", "merge", &cso]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(read(dir.path(), "merged.nt")).unwrap().lines().count(), 54);
    assert_eq!(std::fs::read(&cso).unwrap(), before);
}

#[test]
fn review_stats_reads_journal() {
    let dir = tempfile::tempdir().unwrap();
    let journal = dir.path().join("v.jsonl");
    let mut lines = String::new();
    for (item, r, s) in [("a", "r1", 2), ("a", "r2", 1), ("b", "r1", -2), ("b", "r2", -1)] {
        lines.push_str(&format!("{{\"item\":\"{item}\",\"reviewer\":\"{r}\",\"score\":{s},\"timestamp\":0}}\n"));
    }
    std::fs::write(&journal, lines).unwrap();
    let out = run(&["review", "stats", "--out", journal.to_str().unwrap(), "--metric", "ordinal"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["items_rated_by_all"], 2);
    assert_eq!(v["reviewers"]["r1"]["mean"], 0.0);
    let md = run(&["review", "stats", "--out", journal.to_str().unwrap(), "--format", "markdown"]);
    assert!(String::from_utf8_lossy(&md.stdout).starts_with("| Reviewer | Mean score | St. dev. |"));
}

use std::path::PathBuf;

use ontolint::cli::pipeline::{run_xref, XrefConfig};
use ontolint::rdf::{load_dataset, InputSpec};
use ontolint::reporting::{format_percent, TableFormat};
use ontolint::xref::render_summary;

fn report() -> ontolint::cli::pipeline::XrefReport {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/xref/taxonomy.ttl");
    let ds = load_dataset(&[InputSpec::parse(p.to_str().unwrap())], 1).unwrap().dataset;
    run_xref(&ds, &XrefConfig::default())
}

#[test]
fn one_of_each_kind() {
    let r = report();
    let s = &r.summary;
    assert_eq!(s.total, 6);
    for kind in ["UriValidTarget", "UriExternal", "TextOboPrefix", "TextRegistryPrefix", "TextUnknown", "BlankNodeTarget"] {
        assert_eq!(s.count(kind), 1, "{kind}");
    }
    assert_eq!(s.nonstandard_total(), 1);
    let mut names: Vec<&str> = r.classified.iter().map(|(_, c)| c.kind.name()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 6);
}

#[test]
fn summary_table_shape() {
    let md = render_summary(&report().summary, TableFormat::Markdown);
    assert!(md.starts_with("| Type | | # references | % total |"));
    assert!(md.contains("| **Empty blank node** |  | 1 | 16.67% |"));
    assert!(md.contains("en.wikipedia.org"));
    let json: serde_json::Value = serde_json::from_str(&render_summary(&report().summary, TableFormat::Json)).unwrap();
    assert_eq!(json["total"], 6);
}

#[test]
fn percent_convention() {
    assert_eq!(format_percent(52122, 3908752), "1.33%");
    assert_eq!(format_percent(214, 3908752), "<0.01%");
}

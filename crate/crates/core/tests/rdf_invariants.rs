use std::path::PathBuf;

use ontolint::rdf::{parse_ntriples, parse_rdf, sniff_format, Graph, GraphBuilder, Iri, Literal, Term, Triple};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rdf_fixtures() -> Vec<PathBuf> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut out = Vec::new();
    for sub in ["obo", "cso", "conf", "xref"] {
        for e in std::fs::read_dir(root.join(sub)).unwrap() {
            let p = e.unwrap().path();
            if matches!(p.extension().and_then(|x| x.to_str()), Some("ttl" | "nt")) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

fn load(p: &PathBuf) -> Graph {
    let bytes = std::fs::read(p).unwrap();
    let fmt = sniff_format(&bytes).detected;
    parse_rdf(&bytes, fmt).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn serialization_round_trips_on_fixtures() {
    let files = rdf_fixtures();
    assert!(files.len() >= 8);
    for p in &files {
        let g = load(p);
        let again = parse_ntriples(&g.to_ntriples()).unwrap();
        assert_eq!(again, g, "{}", p.display());
        assert_eq!(again.to_ntriples(), g.to_ntriples());
    }
}

#[test]
fn permuted_lines_parse_to_the_same_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in rdf_fixtures() {
        let nt = load(&p).to_ntriples();
        let mut lines: Vec<&str> = nt.lines().collect();
        lines.shuffle(&mut rng);
        let shuffled = lines.join("\n");
        assert_eq!(parse_ntriples(&shuffled).unwrap(), parse_ntriples(&nt).unwrap(), "{}", p.display());
    }
}

fn random_term(rng: &mut ChaCha8Rng, object: bool) -> Term {
    let n: u32 = rng.random_range(0..40);
    match if object { rng.random_range(0..4) } else { rng.random_range(0..2) } {
        0 => Term::iri(format!("http://n/{n}")).unwrap(),
        1 => Term::blank(format!("b{}", n % 7)).unwrap(),
        2 => Term::literal(format!("v{n}")),
        _ => Term::Literal(Literal::lang(format!("v{n}"), "en").unwrap()),
    }
}

#[test]
fn index_matches_linear_scan_on_1000_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut b = GraphBuilder::new();
    while b.len() < 500 {
        let s = random_term(&mut rng, false);
        let p = Iri::new(format!("http://p/{}", rng.random_range(0..8))).unwrap();
        let o = random_term(&mut rng, true);
        b.insert(Triple::new(s, p, o).unwrap());
    }
    let g = b.build();
    assert_eq!(g.len(), 500);
    let all = g.to_triples();
    for _ in 0..1000 {
        let mask: u8 = rng.random_range(0..8);
        let s = (mask & 1 != 0).then(|| random_term(&mut rng, false));
        let p = (mask & 2 != 0).then(|| Term::iri(format!("http://p/{}", rng.random_range(0..9))).unwrap());
        let o = (mask & 4 != 0).then(|| random_term(&mut rng, true));
        let fast: Vec<Triple> = g
            .match_pattern(s.as_ref(), p.as_ref(), o.as_ref())
            .iter()
            .map(|t| t.to_owned())
            .collect();
        let mut slow: Vec<Triple> = all
            .iter()
            .filter(|t| {
                s.as_ref().is_none_or(|s| &t.subject == s)
                    && p.as_ref().is_none_or(|p| p.as_iri() == Some(&t.predicate))
                    && o.as_ref().is_none_or(|o| &t.object == o)
            })
            .cloned()
            .collect();
        slow.sort_by_key(|t| t.to_ntriples());
        assert_eq!(fast, slow);
    }
}

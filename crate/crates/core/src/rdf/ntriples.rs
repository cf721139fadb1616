//! N-Triples entry points: documents, single lines, single terms.

use super::graph::{Graph, GraphBuilder};
use super::parser::{parse_text, Mode, ParseError, ParseErrorKind, Parser};
use super::term::{Term, Triple};

pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    parse_text(text, Mode::NTriples, None)
}

/// Parses one N-Triples term such as `<http://a>`, `_:b0` or `"x"@en`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut sink = GraphBuilder::new();
    Parser::new(text, Mode::NTriples, &mut sink).single_term()
}

/// Parses exactly one N-Triples statement.
pub fn parse_triple_line(text: &str) -> Result<Triple, ParseError> {
    let graph = parse_ntriples(text)?;
    let mut triples = graph.to_triples();
    if triples.len() != 1 {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::Syntax(format!("expected one triple, found {}", triples.len())),
        });
    }
    Ok(triples.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_round_trip() {
        for text in [
            "<http://a/b>",
            "_:x1",
            "\"plain\"",
            "\"chat\"@fr",
            "\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>",
            "\"quote \\\" and \\\\ and \\n\"",
        ] {
            let term = parse_term(text).unwrap();
            assert_eq!(term.to_ntriples(), text);
        }
    }

    #[test]
    fn single_line() {
        let t = parse_triple_line("<http://a> <http://p> _:b .").unwrap();
        assert_eq!(t.to_ntriples(), "<http://a> <http://p> _:b .");
        assert!(parse_triple_line("").is_err());
    }
}

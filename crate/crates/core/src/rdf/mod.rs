//! RDF terms, an indexed in-memory graph, and Turtle / N-Triples parsing.

mod dataset;
mod graph;
pub mod iri;
mod ntriples;
mod parser;
mod sniff;
mod term;
mod turtle;
pub mod vocab;

pub use dataset::{load_dataset, parse_rdf, Dataset, InputSpec, LoadError, LoadOutcome, RdfError};
pub use graph::{Graph, GraphBuilder, TripleRef};
pub use ntriples::{parse_ntriples, parse_term, parse_triple_line};
pub use parser::{ParseError, ParseErrorKind};
pub use sniff::{decompress_if_gzip, is_gzip, sniff_format, FormatReport, RdfFormat};
pub use term::{BlankNode, Iri, Literal, Term, TermError, TermKind, Triple};
pub use turtle::{parse_turtle, parse_turtle_with_base};

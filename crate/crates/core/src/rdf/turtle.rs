//! Turtle entry points.

use super::graph::Graph;
use super::parser::{parse_text, Mode, ParseError};

pub fn parse_turtle(text: &str) -> Result<Graph, ParseError> {
    parse_text(text, Mode::Turtle, None)
}

/// Parses Turtle with an initial base IRI for resolving relative references.
pub fn parse_turtle_with_base(text: &str, base: &str) -> Result<Graph, ParseError> {
    parse_text(text, Mode::Turtle, Some(base))
}

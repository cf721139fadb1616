//! Recursive-descent parser for Turtle, with a strict mode for N-Triples.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::graph::{Graph, GraphBuilder};
use super::iri;
use super::term::{BlankNode, Iri, Literal, Term, TermError, Triple};
use super::vocab::{rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownPrefix(String),
    RelativeIriWithoutBase(String),
    Term(TermError),
    InvalidUtf8,
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownPrefix(p) => write!(f, "unresolvable prefix {p:?}"),
            ParseErrorKind::RelativeIriWithoutBase(i) => {
                write!(f, "relative IRI <{i}> with no base")
            }
            ParseErrorKind::Term(e) => write!(f, "{e}"),
            ParseErrorKind::InvalidUtf8 => write!(f, "input is not valid UTF-8"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Turtle,
    NTriples,
}

pub(crate) struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    mode: Mode,
    base: Option<String>,
    prefixes: HashMap<String, String>,
    out: &'a mut GraphBuilder,
    anon_prefix: String,
    anon_counter: usize,
    explicit_labels: HashSet<String>,
    generated_labels: HashSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &str, mode: Mode, out: &'a mut GraphBuilder) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            mode,
            base: None,
            prefixes: HashMap::new(),
            out,
            anon_prefix: "genid".to_string(),
            anon_counter: 0,
            explicit_labels: HashSet::new(),
            generated_labels: HashSet::new(),
        }
    }

    fn err<T>(&self, kind: ParseErrorKind) -> PResult<T> {
        Err(ParseError {
            line: self.line,
            column: self.column,
            kind,
        })
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.syntax(format!("expected {want:?}, found {c:?}")),
            None => self.syntax(format!("expected {want:?}, found end of input")),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn starts_with_keyword(&self, kw: &str) -> bool {
        let n = kw.chars().count();
        let matches = kw
            .chars()
            .enumerate()
            .all(|(i, k)| self.peek_at(i).is_some_and(|c| c.eq_ignore_ascii_case(&k)));
        matches && !self.peek_at(n).is_some_and(|c| is_pn_chars(c) || c == ':')
    }

    fn turtle_only(&self, what: &str) -> PResult<()> {
        if self.mode == Mode::NTriples {
            return self.syntax(format!("{what} is not allowed in N-Triples"));
        }
        Ok(())
    }

    pub(crate) fn parse_document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else {
                return Ok(());
            };
            if c == '@' {
                self.turtle_only("a directive")?;
                self.bump();
                if self.starts_with_keyword("prefix") {
                    self.advance(6);
                    self.prefix_body()?;
                    self.skip_ws();
                    self.expect('.')?;
                } else if self.starts_with_keyword("base") {
                    self.advance(4);
                    self.base_body()?;
                    self.skip_ws();
                    self.expect('.')?;
                } else {
                    return self.syntax("unknown directive");
                }
            } else if self.mode == Mode::Turtle && self.starts_with_keyword("prefix") {
                self.advance(6);
                self.prefix_body()?;
            } else if self.mode == Mode::Turtle && self.starts_with_keyword("base") {
                self.advance(4);
                self.base_body()?;
            } else {
                self.triples()?;
                self.skip_ws();
                self.expect('.')?;
            }
        }
    }

    fn advance(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn prefix_body(&mut self) -> PResult<()> {
        self.skip_ws();
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !(is_pn_chars(c) || c == '.') {
                return self.syntax(format!("invalid character {c:?} in prefix name"));
            }
            prefix.push(c);
            self.bump();
        }
        self.expect(':')?;
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.prefixes.insert(prefix, iri);
        Ok(())
    }

    fn base_body(&mut self) -> PResult<()> {
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.base = Some(iri);
        Ok(())
    }

    fn triples(&mut self) -> PResult<()> {
        let subject = match self.peek() {
            Some('[') => {
                self.turtle_only("a blank node property list")?;
                let node = self.blank_property_list()?;
                self.skip_ws();
                if self.peek() == Some('.') {
                    return Ok(());
                }
                node
            }
            _ => self.subject()?,
        };
        self.skip_ws();
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_term()?)),
            Some('_') => self.blank_label(),
            Some('(') => {
                self.turtle_only("a collection")?;
                self.collection()
            }
            Some(_) if self.mode == Mode::Turtle => Ok(Term::Iri(self.prefixed_name()?)),
            Some(c) => self.syntax(format!("unexpected {c:?} at start of triple")),
            None => self.syntax("unexpected end of input"),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            self.skip_ws();
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            self.turtle_only("a predicate list")?;
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            // A trailing ';' may end the list.
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Iri) -> PResult<()> {
        loop {
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object)?;
            self.skip_ws();
            if self.peek() != Some(',') {
                return Ok(());
            }
            self.turtle_only("an object list")?;
            self.bump();
            self.skip_ws();
        }
    }

    fn emit(&mut self, s: Term, p: Iri, o: Term) -> PResult<()> {
        match Triple::new(s, p, o) {
            Ok(t) => {
                self.out.insert(t);
                Ok(())
            }
            Err(e) => self.err(ParseErrorKind::Term(e)),
        }
    }

    fn verb(&mut self) -> PResult<Iri> {
        if self.peek() == Some('a')
            && !self
                .peek_at(1)
                .is_some_and(|c| is_pn_chars(c) || c == ':' || c == '.')
        {
            self.turtle_only("the 'a' keyword")?;
            self.bump();
            return Ok(Iri::new_unchecked(rdf::TYPE));
        }
        match self.peek() {
            Some('<') => self.iri_term(),
            Some(_) if self.mode == Mode::Turtle => self.prefixed_name(),
            Some(c) => self.syntax(format!("expected predicate IRI, found {c:?}")),
            None => self.syntax("expected predicate, found end of input"),
        }
    }

    fn object(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_term()?)),
            Some('_') => self.blank_label(),
            Some('[') => {
                self.turtle_only("a blank node property list")?;
                self.blank_property_list()
            }
            Some('(') => {
                self.turtle_only("a collection")?;
                self.collection()
            }
            Some('"') => self.string_literal('"'),
            Some('\'') => {
                self.turtle_only("a single-quoted literal")?;
                self.string_literal('\'')
            }
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                self.turtle_only("a numeric literal")?;
                self.numeric()
            }
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                self.turtle_only("a numeric literal")?;
                self.numeric()
            }
            Some(_) if self.mode == Mode::Turtle => {
                for kw in ["true", "false"] {
                    if self.starts_with_keyword(kw) {
                        self.advance(kw.len());
                        return Ok(Term::Literal(
                            Literal::typed(kw, Iri::new_unchecked(xsd::BOOLEAN))
                                .expect("boolean is not langString"),
                        ));
                    }
                }
                Ok(Term::Iri(self.prefixed_name()?))
            }
            Some(c) => self.syntax(format!("unexpected {c:?} in object position")),
            None => self.syntax("unexpected end of input in object position"),
        }
    }

    fn fresh_blank(&mut self) -> Term {
        let label = format!("{}{}", self.anon_prefix, self.anon_counter);
        self.anon_counter += 1;
        self.generated_labels.insert(label.clone());
        Term::Blank(BlankNode::new(label).expect("generated labels are valid"))
    }

    fn blank_property_list(&mut self) -> PResult<Term> {
        self.expect('[')?;
        let node = self.fresh_blank();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.skip_ws();
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        self.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    break;
                }
                None => return self.syntax("unterminated collection"),
                _ => items.push(self.object()?),
            }
        }
        let nil = Term::Iri(Iri::new_unchecked(rdf::NIL));
        if items.is_empty() {
            return Ok(nil);
        }
        let nodes: Vec<Term> = (0..items.len()).map(|_| self.fresh_blank()).collect();
        for (i, item) in items.into_iter().enumerate() {
            self.emit(nodes[i].clone(), Iri::new_unchecked(rdf::FIRST), item)?;
            let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| nil.clone());
            self.emit(nodes[i].clone(), Iri::new_unchecked(rdf::REST), rest)?;
        }
        Ok(nodes[0].clone())
    }

    fn blank_label(&mut self) -> PResult<Term> {
        self.expect('_')?;
        self.expect(':')?;
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return self.syntax("invalid blank node label"),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) {
                label.push(c);
                self.bump();
            } else if c == '.' && self.peek_at(1).is_some_and(|n| is_pn_chars(n) || n == '.') {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        self.explicit_labels.insert(label.clone());
        match BlankNode::new(label) {
            Ok(b) => Ok(Term::Blank(b)),
            Err(e) => self.err(ParseErrorKind::Term(e)),
        }
    }

    fn iri_ref(&mut self) -> PResult<String> {
        self.expect('<')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => {
                    let c = self.unicode_escape()?;
                    value.push(c);
                }
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.syntax(format!("invalid character {c:?} in IRI"));
                }
                Some(c) => value.push(c),
                None => return self.syntax("unterminated IRI"),
            }
        }
        if iri::is_absolute(&value) {
            return Ok(value);
        }
        match (&self.base, self.mode) {
            (Some(base), Mode::Turtle) => Ok(iri::resolve(base, &value)),
            _ => self.err(ParseErrorKind::RelativeIriWithoutBase(value)),
        }
    }

    fn iri_term(&mut self) -> PResult<Iri> {
        let value = self.iri_ref()?;
        match Iri::new(value) {
            Ok(i) => Ok(i),
            Err(e) => self.err(ParseErrorKind::Term(e)),
        }
    }

    fn unicode_escape(&mut self) -> PResult<char> {
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return self.syntax("invalid escape in IRI"),
        };
        self.hex_char(len)
    }

    fn hex_char(&mut self, len: usize) -> PResult<char> {
        let mut code = 0u32;
        for _ in 0..len {
            match self.bump().and_then(|c| c.to_digit(16)) {
                Some(d) => code = code * 16 + d,
                None => return self.syntax("invalid hex digit in escape"),
            }
        }
        match char::from_u32(code) {
            Some(c) => Ok(c),
            None => self.syntax(format!("invalid code point U+{code:X}")),
        }
    }

    fn prefixed_name(&mut self) -> PResult<Iri> {
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if is_pn_chars(c) || (c == '.' && !prefix.is_empty()) {
                prefix.push(c);
                self.bump();
            } else {
                return match c {
                    c if c.is_whitespace() => self.syntax(format!("unexpected token {prefix:?}")),
                    c => self.syntax(format!("unexpected {c:?}")),
                };
            }
        }
        if self.peek() != Some(':') {
            return self.syntax("unexpected end of input in prefixed name");
        }
        let start_line = self.line;
        let start_col = self.column;
        self.bump();
        let mut local = String::new();
        loop {
            match self.peek() {
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some(c) if "_~.-!$&'()*+,;=/?#@%".contains(c) => local.push(c),
                        _ => return self.syntax("invalid escape in local name"),
                    }
                }
                Some('%') => {
                    let h1 = self.peek_at(1).filter(|c| c.is_ascii_hexdigit());
                    let h2 = self.peek_at(2).filter(|c| c.is_ascii_hexdigit());
                    match (h1, h2) {
                        (Some(a), Some(b)) => {
                            local.push('%');
                            local.push(a);
                            local.push(b);
                            self.advance(3);
                        }
                        _ => return self.syntax("invalid percent escape in local name"),
                    }
                }
                Some(c) if is_pn_chars(c) || c == ':' || (c.is_ascii_digit()) => {
                    local.push(c);
                    self.bump();
                }
                Some('.')
                    if !local.is_empty()
                        && self
                            .peek_at(1)
                            .is_some_and(|n| is_pn_chars(n) || n == ':' || n == '.' || n == '%' || n == '\\') =>
                {
                    local.push('.');
                    self.bump();
                }
                _ => break,
            }
        }
        let Some(ns) = self.prefixes.get(&prefix) else {
            return Err(ParseError {
                line: start_line,
                column: start_col,
                kind: ParseErrorKind::UnknownPrefix(prefix),
            });
        };
        match Iri::new(format!("{ns}{local}")) {
            Ok(i) => Ok(i),
            Err(e) => self.err(ParseErrorKind::Term(e)),
        }
    }

    fn string_literal(&mut self, quote: char) -> PResult<Term> {
        let long = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        if long {
            self.turtle_only("a long string literal")?;
            self.advance(3);
        } else {
            self.bump();
        }
        let mut value = String::new();
        loop {
            match self.peek() {
                None => return self.syntax("unterminated string literal"),
                Some(c) if c == quote => {
                    if !long {
                        self.bump();
                        break;
                    }
                    if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                        self.advance(3);
                        break;
                    }
                    value.push(c);
                    self.bump();
                }
                Some('\\') => {
                    self.bump();
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_char(4)?,
                        Some('U') => self.hex_char(8)?,
                        _ => return self.syntax("invalid string escape"),
                    };
                    value.push(c);
                }
                Some('\n') | Some('\r') if !long => {
                    return self.syntax("line break in short string literal");
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        tag.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                match Literal::lang(value, &tag) {
                    Ok(l) => Ok(Term::Literal(l)),
                    Err(e) => self.err(ParseErrorKind::Term(e)),
                }
            }
            Some('^') => {
                self.bump();
                self.expect('^')?;
                let dt = if self.peek() == Some('<') {
                    self.iri_term()?
                } else if self.mode == Mode::Turtle {
                    self.prefixed_name()?
                } else {
                    return self.syntax("expected datatype IRI");
                };
                match Literal::typed(value, dt) {
                    Ok(l) => Ok(Term::Literal(l)),
                    Err(e) => self.err(ParseErrorKind::Term(e)),
                }
            }
            _ => Ok(Term::Literal(Literal::string(value))),
        }
    }

    fn numeric(&mut self) -> PResult<Term> {
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            text.push(c);
            self.bump();
            int_digits += 1;
        }
        let mut datatype = xsd::INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            text.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                text.push(c);
                self.bump();
            }
            datatype = xsd::DECIMAL;
        } else if int_digits == 0 && !matches!(self.peek(), Some('e' | 'E')) {
            return self.syntax("malformed numeric literal");
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            text.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                text.push(c);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                text.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return self.syntax("malformed exponent");
            }
            datatype = xsd::DOUBLE;
        }
        Ok(Term::Literal(
            Literal::typed(text, Iri::new_unchecked(datatype)).expect("numeric datatype"),
        ))
    }

    /// Parses a lone term followed only by whitespace.
    pub(crate) fn single_term(&mut self) -> PResult<Term> {
        self.skip_ws();
        let t = self.object()?;
        self.skip_ws();
        if self.peek().is_some() {
            return self.syntax("trailing characters after term");
        }
        Ok(t)
    }

    fn labels_collide(&self) -> bool {
        !self.explicit_labels.is_disjoint(&self.generated_labels)
    }
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_ascii_alphabetic()
        || matches!(c as u32,
            0xC0..=0xD6 | 0xD8..=0xF6 | 0xF8..=0x2FF | 0x370..=0x37D | 0x37F..=0x1FFF
            | 0x200C..=0x200D | 0x2070..=0x218F | 0x2C00..=0x2FEF | 0x3001..=0xD7FF
            | 0xF900..=0xFDCF | 0xFDF0..=0xFFFD | 0x10000..=0xEFFFF)
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{B7}'
        || matches!(c as u32, 0x300..=0x36F | 0x203F..=0x2040)
}

pub(crate) fn parse_text(text: &str, mode: Mode, base: Option<&str>) -> Result<Graph, ParseError> {
    // Anonymous blank nodes get generated labels; re-run with a different
    // label prefix in the rare case the document already uses one of them.
    for attempt in 0.. {
        let mut builder = GraphBuilder::new();
        let mut parser = Parser::new(text, mode, &mut builder);
        parser.base = base.map(str::to_string);
        if attempt > 0 {
            parser.anon_prefix = format!("genid{attempt}x");
        }
        parser.parse_document()?;
        if !parser.labels_collide() {
            return Ok(builder.build());
        }
    }
    unreachable!()
}

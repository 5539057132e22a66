//! A small Turtle reader.
//!
//! Supports `@prefix`/`PREFIX` directives, `;` and `,` lists, anonymous `[ ]`
//! nodes, `_:` labels, IRIs, prefixed names, quoted literals with a datatype
//! or language tag, bare numbers and booleans, and `a`. Collections, long
//! strings and `@base` are rejected.
//!
//! Hand-written data often deviates from strict Turtle, so the reader also
//! accepts: directives without the final `.`, a datatype after a bare number
//! (`2458239.5^^xsd:double`), `/` and `.` inside local names
//! (`hcal:101.1/year/2019`), undeclared prefixes (kept as written), and a
//! statement that ends with `;` right before the next subject.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use super::vocab::{RDF_TYPE, XSD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {reason}")]
pub struct TurtleError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub lexical: String,
    /// Expanded datatype IRI, if any.
    pub datatype: Option<String>,
    pub language: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// An IRI, or a prefixed name whose prefix was never declared.
    Iri(String),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn as_node(&self) -> Option<&str> {
        match self {
            Term::Iri(s) | Term::Blank(s) => Some(s),
            Term::Literal(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(s) | Term::Blank(s) => f.write_str(s),
            Term::Literal(l) => {
                write!(f, "\"{}\"", l.lexical)?;
                if let Some(dt) = &l.datatype {
                    write!(f, "^^<{dt}>")?;
                }
                if let Some(lang) = &l.language {
                    write!(f, "@{lang}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Triple {
    pub subject: Term,
    pub predicate: String,
    pub object: Term,
    pub line: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    pub triples: Vec<Triple>,
    pub prefixes: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    IriRef(String),
    PName(String, String),
    Blank(String),
    Str(String),
    Number(String),
    Word(String),
    LangTag(String),
    DataType,
    Dot,
    Semi,
    Comma,
    LBracket,
    RBracket,
    LParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    line_start: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-')
}

fn is_local_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '/' | '%' | ':' | '#')
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            line: 1,
            line_start: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(offset)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.line_start = self.pos;
        }
        Some(c)
    }

    fn column(&self) -> usize {
        self.src[self.line_start..self.pos].chars().count() + 1
    }

    fn error(&self, reason: impl Into<String>) -> TurtleError {
        TurtleError {
            line: self.line,
            column: self.column(),
            reason: reason.into(),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        self.src[start..self.pos].to_string()
    }

    fn tokens(mut self) -> Result<Vec<Token>, TurtleError> {
        let mut out = Vec::new();
        loop {
            // whitespace and comments
            while let Some(c) = self.peek() {
                if c.is_whitespace() {
                    self.bump();
                } else if c == '#' {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                } else {
                    break;
                }
            }
            let (line, column) = (self.line, self.column());
            let Some(c) = self.peek() else { break };
            let tok = match c {
                '<' => {
                    self.bump();
                    let iri = self.take_while(|c| c != '>' && c != '\n');
                    if self.bump() != Some('>') {
                        return Err(self.error("unterminated IRI"));
                    }
                    Tok::IriRef(iri)
                }
                '"' | '\'' => Tok::Str(self.string(c)?),
                '.' if !self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => {
                    self.bump();
                    Tok::Dot
                }
                ';' => {
                    self.bump();
                    Tok::Semi
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                '[' => {
                    self.bump();
                    Tok::LBracket
                }
                ']' => {
                    self.bump();
                    Tok::RBracket
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                '^' => {
                    self.bump();
                    if self.bump() != Some('^') {
                        return Err(self.error("expected `^^`"));
                    }
                    Tok::DataType
                }
                '@' => {
                    self.bump();
                    let word = self.take_while(|c| c.is_alphanumeric() || c == '-');
                    if word.is_empty() {
                        return Err(self.error("expected directive or language tag after `@`"));
                    }
                    match word.as_str() {
                        "prefix" | "base" => Tok::Word(format!("@{word}")),
                        _ => Tok::LangTag(word),
                    }
                }
                '_' if self.peek_at(1) == Some(':') => {
                    self.bump();
                    self.bump();
                    let label = self.local_name();
                    if label.is_empty() {
                        return Err(self.error("empty blank node label"));
                    }
                    Tok::Blank(label)
                }
                c if c.is_ascii_digit() || ((c == '+' || c == '-' || c == '.') && self.peek_at(1).is_some_and(|d| d.is_ascii_digit() || d == '.')) => {
                    Tok::Number(self.number())
                }
                ':' => {
                    self.bump();
                    Tok::PName(String::new(), self.local_name())
                }
                c if c.is_alphabetic() => {
                    let word = self.take_while(is_name_char);
                    if self.peek() == Some(':') {
                        self.bump();
                        Tok::PName(word, self.local_name())
                    } else {
                        Tok::Word(word)
                    }
                }
                other => return Err(self.error(format!("unexpected character `{other}`"))),
            };
            out.push(Token { tok, line, column });
        }
        Ok(out)
    }

    /// Local part of a prefixed name; a trailing `.` belongs to the statement.
    fn local_name(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(is_local_char) {
            self.bump();
        }
        while self.pos > start && self.src[..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn number(&mut self) -> String {
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.bump();
        }
        self.take_while(|c| c.is_ascii_digit());
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
            self.bump();
            self.take_while(|c| c.is_ascii_digit());
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = (self.pos, self.line, self.line_start);
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if self.take_while(|c| c.is_ascii_digit()).is_empty() {
                (self.pos, self.line, self.line_start) = save;
            }
        }
        self.src[start..self.pos].to_string()
    }

    fn string(&mut self, quote: char) -> Result<String, TurtleError> {
        self.bump();
        if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
            return Err(self.error("long string literals are not supported"));
        }
        let mut out = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(self.error("unterminated string literal")),
                Some(c) if c == quote => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some('r') => out.push('\r'),
                    Some(c @ ('"' | '\'' | '\\')) => out.push(c),
                    _ => return Err(self.error("unsupported escape sequence")),
                },
                Some(c) => out.push(c),
            }
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: HashMap<String, String>,
    declared: Vec<(String, String)>,
    undeclared: BTreeSet<String>,
    triples: Vec<Triple>,
    next_blank: usize,
}

/// Prefixes that are available without a declaration.
const PREDECLARED: [(&str, &str); 4] = [
    ("xsd", XSD),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("owl", "http://www.w3.org/2002/07/owl#"),
];

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, reason: impl Into<String>) -> TurtleError {
        let (line, column) = match self.tokens.get(self.pos).or(self.tokens.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        };
        TurtleError {
            line,
            column,
            reason: reason.into(),
        }
    }

    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map_or(1, |t| t.line)
    }

    fn expand(&mut self, prefix: &str, local: &str) -> String {
        match self.prefixes.get(prefix) {
            Some(ns) => format!("{ns}{local}"),
            None => {
                self.undeclared.insert(prefix.to_string());
                format!("{prefix}:{local}")
            }
        }
    }

    fn fresh_blank(&mut self) -> String {
        self.next_blank += 1;
        format!("_:genid{}", self.next_blank)
    }

    fn document(&mut self) -> Result<(), TurtleError> {
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Word(w) if w == "@prefix" || w.eq_ignore_ascii_case("prefix") => {
                    self.directive()?
                }
                Tok::Word(w) if w == "@base" || w.eq_ignore_ascii_case("base") => {
                    return Err(self.error_here("base IRIs are not supported"));
                }
                _ => self.statement()?,
            }
        }
        Ok(())
    }

    fn directive(&mut self) -> Result<(), TurtleError> {
        self.next();
        let prefix = match self.next().map(|t| t.tok) {
            Some(Tok::PName(p, l)) if l.is_empty() => p,
            _ => return Err(self.error_here("expected a prefix name ending in `:`")),
        };
        let iri = match self.next().map(|t| t.tok) {
            Some(Tok::IriRef(iri)) => iri,
            _ => return Err(self.error_here("expected an IRI in angle brackets")),
        };
        if self.peek() == Some(&Tok::Dot) {
            self.next();
        }
        self.prefixes.insert(prefix.clone(), iri.clone());
        self.declared.push((prefix, iri));
        Ok(())
    }

    fn statement(&mut self) -> Result<(), TurtleError> {
        let subject = if self.peek() == Some(&Tok::LBracket) {
            let node = self.blank_node_property_list()?;
            if matches!(self.peek(), Some(Tok::Dot) | None) {
                self.next();
                return Ok(());
            }
            node
        } else {
            self.node("subject")?
        };
        let implied_end = self.predicate_object_list(&subject)?;
        match self.peek() {
            Some(Tok::Dot) => {
                self.next();
                Ok(())
            }
            _ if implied_end => Ok(()),
            _ => Err(self.error_here("expected `.` to end the statement")),
        }
    }

    /// Returns true when the list ended with a dangling `;` that also ends
    /// the statement.
    fn predicate_object_list(&mut self, subject: &Term) -> Result<bool, TurtleError> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            if self.peek() != Some(&Tok::Semi) {
                return Ok(false);
            }
            while self.peek() == Some(&Tok::Semi) {
                self.next();
            }
            match self.peek() {
                Some(Tok::Dot) | Some(Tok::RBracket) => return Ok(false),
                None => return Ok(true),
                Some(Tok::Word(w)) if w == "@prefix" || w.eq_ignore_ascii_case("prefix") => {
                    return Ok(true)
                }
                _ if self.starts_new_subject() => return Ok(true),
                _ => {}
            }
        }
    }

    /// `<node> a ...` after a `;` can only be a new subject, since `a` is
    /// never an object.
    fn starts_new_subject(&self) -> bool {
        let node = matches!(
            self.peek(),
            Some(Tok::IriRef(_) | Tok::PName(..) | Tok::Blank(_))
        );
        node && matches!(self.peek_at(1), Some(Tok::Word(w)) if w == "a")
    }

    fn verb(&mut self) -> Result<String, TurtleError> {
        match self.peek().cloned() {
            Some(Tok::Word(w)) if w == "a" => {
                self.next();
                Ok(RDF_TYPE.to_string())
            }
            Some(Tok::IriRef(iri)) => {
                self.next();
                Ok(iri)
            }
            Some(Tok::PName(p, l)) => {
                self.next();
                Ok(self.expand(&p, &l))
            }
            _ => Err(self.error_here("expected a predicate")),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &str) -> Result<(), TurtleError> {
        loop {
            let line = self.line();
            let object = self.object()?;
            self.triples.push(Triple {
                subject: subject.clone(),
                predicate: predicate.to_string(),
                object,
                line,
            });
            if self.peek() == Some(&Tok::Comma) {
                self.next();
            } else {
                return Ok(());
            }
        }
    }

    fn node(&mut self, what: &str) -> Result<Term, TurtleError> {
        match self.peek().cloned() {
            Some(Tok::IriRef(iri)) => {
                self.next();
                Ok(Term::Iri(iri))
            }
            Some(Tok::PName(p, l)) => {
                self.next();
                Ok(Term::Iri(self.expand(&p, &l)))
            }
            Some(Tok::Blank(label)) => {
                self.next();
                Ok(Term::Blank(format!("_:{label}")))
            }
            Some(Tok::LParen) => Err(self.error_here("collections are not supported")),
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }

    fn blank_node_property_list(&mut self) -> Result<Term, TurtleError> {
        self.next();
        let node = Term::Blank(self.fresh_blank());
        if self.peek() != Some(&Tok::RBracket) {
            self.predicate_object_list(&node)?;
        }
        if self.peek() == Some(&Tok::RBracket) {
            self.next();
            Ok(node)
        } else {
            Err(self.error_here("expected `]` to close the node"))
        }
    }

    fn object(&mut self) -> Result<Term, TurtleError> {
        match self.peek().cloned() {
            Some(Tok::LBracket) => self.blank_node_property_list(),
            Some(Tok::Str(lexical)) => {
                self.next();
                self.literal_suffix(lexical, None)
            }
            Some(Tok::Number(lexical)) => {
                self.next();
                let default = if lexical.contains(['e', 'E']) {
                    "double"
                } else if lexical.contains('.') {
                    "decimal"
                } else {
                    "integer"
                };
                self.literal_suffix(lexical, Some(format!("{XSD}{default}")))
            }
            Some(Tok::Word(w)) if w == "true" || w == "false" => {
                self.next();
                Ok(Term::Literal(Literal {
                    lexical: w,
                    datatype: Some(format!("{XSD}boolean")),
                    language: None,
                }))
            }
            _ => self.node("an object"),
        }
    }

    fn literal_suffix(&mut self, lexical: String, default: Option<String>) -> Result<Term, TurtleError> {
        let mut literal = Literal {
            lexical,
            datatype: default,
            language: None,
        };
        match self.peek().cloned() {
            Some(Tok::DataType) => {
                self.next();
                literal.datatype = Some(match self.node("a datatype")? {
                    Term::Iri(iri) => iri,
                    _ => return Err(self.error_here("datatype must be an IRI")),
                });
            }
            Some(Tok::LangTag(lang)) => {
                self.next();
                literal.language = Some(lang);
                literal.datatype = None;
            }
            _ => {}
        }
        Ok(Term::Literal(literal))
    }
}

/// Parse Turtle text into triples.
pub fn parse_graph(text: &str) -> Result<Graph, TurtleError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: PREDECLARED
            .iter()
            .map(|(p, ns)| (p.to_string(), ns.to_string()))
            .collect(),
        declared: Vec::new(),
        undeclared: BTreeSet::new(),
        triples: Vec::new(),
        next_blank: 0,
    };
    parser.document()?;
    let warnings = parser
        .undeclared
        .iter()
        .map(|p| format!("prefix `{p}:` is not declared; its names are kept as written"))
        .collect();
    Ok(Graph {
        triples: parser.triples,
        prefixes: parser.declared,
        warnings,
    })
}

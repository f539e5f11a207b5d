//! Expression DSL parser and canonical serializers (text and JSON).

mod json;
mod lex;
mod parse;
mod text;

use std::fmt;

pub use json::{from_json, to_json};
pub use parse::{parse, parse_form, parse_multivector, parse_poly, parse_value, ValueKind};
pub use text::to_text;

use crate::exterior::{Form, MultiVector};
use crate::polyring::Polynomial;

/// Any value the expression DSL can denote.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Poly(Polynomial),
    MultiVector(MultiVector),
    Form(Form),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Poly(_) => "poly",
            Value::MultiVector(_) => "multivector",
            Value::Form(_) => "form",
        }
    }
}

/// Byte range into the offending input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(begin: usize, end: usize) -> SourceSpan {
        debug_assert!(begin <= end);
        SourceSpan { begin, end }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lex,
    Syntax,
    DegreeMismatch,
    UnknownVariable,
    IndexRange,
}

impl ParseErrorKind {
    fn label(&self) -> &'static str {
        match self {
            ParseErrorKind::Lex => "lex",
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::DegreeMismatch => "degree-mismatch",
            ParseErrorKind::UnknownVariable => "unknown-variable",
            ParseErrorKind::IndexRange => "index-range",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError { span, kind, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} error at {}..{}: {}",
            self.kind.label(),
            self.span.begin,
            self.span.end,
            self.message
        )
    }
}

impl std::error::Error for ParseError {}

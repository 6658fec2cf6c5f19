//! Concrete syntax: parsing and printing of programs and types.

mod lexer;
mod parser;
mod printer;
mod span;

use thiserror::Error;

pub use parser::{parse_program, parse_program_with_spans, parse_type};
pub use printer::{pretty_print, scalar_to_string};
pub use span::{SourceSpan, SpanIndex};

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    /// Token kinds that would have been accepted at `span`.
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>, expected: Vec<String>) -> ParseError {
        ParseError { span, message: message.into(), expected }
    }

    /// `file:line:column: message` against the original text.
    pub fn render(&self, src: &str) -> String {
        let (line, col) = self.span.line_col(src);
        match &self.span.file {
            Some(f) => format!("{f}:{line}:{col}: {}", self.message),
            None => format!("{line}:{col}: {}", self.message),
        }
    }
}

use std::fmt;

use crate::surface::{SourceSpan, SpanIndex};
use crate::syntax::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeErrorKind {
    Mismatch,
    LinearityViolation,
    NormViolation,
    OrthogonalityFailure,
    /// Orthogonality could not be decided, so the match is rejected.
    OrthogonalityUndecided,
    UnboundVariable,
    /// A superposition at a type whose core is a function type.
    SupAtArrowType,
    /// A superposed application whose operators differ.
    HeadNotPure,
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeErrorKind::Mismatch => "type mismatch",
            TypeErrorKind::LinearityViolation => "linearity violation",
            TypeErrorKind::NormViolation => "norm violation",
            TypeErrorKind::OrthogonalityFailure => "branches not orthogonal",
            TypeErrorKind::OrthogonalityUndecided => "orthogonality undecided",
            TypeErrorKind::UnboundVariable => "unbound variable",
            TypeErrorKind::SupAtArrowType => "superposition of functions",
            TypeErrorKind::HeadNotPure => "operator not pure",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub message: String,
    /// The innermost pure term being typed when the error arose.
    pub subject: Option<Box<Term>>,
    pub location: Option<SourceSpan>,
}

impl TypeError {
    pub fn new(kind: TypeErrorKind, message: impl Into<String>) -> TypeError {
        TypeError { kind, message: message.into(), subject: None, location: None }
    }

    pub(crate) fn about(mut self, t: &Term) -> TypeError {
        if self.subject.is_none() {
            self.subject = Some(Box::new(t.clone()));
        }
        self
    }

    /// Fills in `location` from the parser's span table.
    pub fn locate(mut self, spans: &SpanIndex) -> TypeError {
        if self.location.is_none() {
            self.location = self.subject.as_ref().and_then(|t| spans.lookup(t)).cloned();
        }
        self
    }

    /// `file:line:col: kind: message` when a location is known.
    pub fn render(&self, src: &str) -> String {
        match &self.location {
            Some(span) => {
                let (line, col) = span.line_col(src);
                let file = span.file.as_deref().map(|f| format!("{f}:")).unwrap_or_default();
                format!("{file}{line}:{col}: {}: {}", self.kind, self.message)
            }
            None => self.to_string(),
        }
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for TypeError {}

pub(crate) fn err(kind: TypeErrorKind, message: impl Into<String>) -> TypeError {
    TypeError::new(kind, message)
}

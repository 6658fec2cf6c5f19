use std::fmt;
use std::sync::Arc;

use crate::syntax::Term;

/// A byte range `[start, end)` in a source text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Option<Arc<str>>,
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(file: Option<&Arc<str>>, start: usize, end: usize) -> SourceSpan {
        assert!(end >= start, "span ends before it starts");
        SourceSpan { file: file.cloned(), start, end }
    }

    pub fn join(&self, other: &SourceSpan) -> SourceSpan {
        SourceSpan { file: self.file.clone(), start: self.start.min(other.start), end: self.end.max(other.end) }
    }

    /// One-based line and column of `start` in `src`.
    pub fn line_col(&self, src: &str) -> (usize, usize) {
        let before = &src[..self.start.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Source positions of the pure subterms built while parsing. Lookup is
/// up to alpha-equivalence and returns the first occurrence.
#[derive(Clone, Debug, Default)]
pub struct SpanIndex {
    entries: Vec<(Term, SourceSpan)>,
}

impl SpanIndex {
    pub(crate) fn record(&mut self, t: &Term, span: SourceSpan) {
        self.entries.push((t.clone(), span));
    }

    pub fn lookup(&self, t: &Term) -> Option<&SourceSpan> {
        self.entries.iter().find(|(u, _)| u == t).map(|(_, s)| s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

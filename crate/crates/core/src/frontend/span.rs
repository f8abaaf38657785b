use std::fmt;
use std::sync::Arc;

/// A location in a source file.
///
/// `line` and `column` are 1-based and count characters; `offset` and
/// `length` are byte quantities into the original text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub line: u32,
    pub column: u32,
    pub offset: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(file: Arc<str>, line: u32, column: u32, offset: usize, length: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan {
            file,
            line,
            column,
            offset,
            length,
        }
    }

    /// Span used for synthesized nodes that have no source text.
    pub fn synthetic() -> Self {
        SourceSpan {
            file: Arc::from("<synthetic>"),
            line: 1,
            column: 1,
            offset: 0,
            length: 0,
        }
    }

    /// Extends `self` so that it ends where `end` ends. Both spans must
    /// belong to the same file.
    pub fn to(&self, end: &SourceSpan) -> SourceSpan {
        let stop = (end.offset + end.length).max(self.offset + self.length);
        SourceSpan {
            file: self.file.clone(),
            line: self.line,
            column: self.column,
            offset: self.offset,
            length: stop - self.offset,
        }
    }

    pub fn end(&self) -> usize {
        self.offset + self.length
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

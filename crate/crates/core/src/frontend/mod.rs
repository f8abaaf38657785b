//! Lexing and parsing of QHDL source text.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod span;
pub mod token;

use thiserror::Error;

pub use ast::DesignFile;
pub use lexer::tokenize;
pub use parser::parse;
pub use printer::print;
pub use span::SourceSpan;
pub use token::Token;

use crate::diagnostic::Diagnostic;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FrontendError {
    #[error("illegal character {ch:?}")]
    IllegalCharacter { span: SourceSpan, ch: char },
    #[error("unterminated {what}")]
    Unterminated { span: SourceSpan, what: &'static str },
    #[error("expected {expected}, found {found}")]
    Syntax {
        span: SourceSpan,
        expected: String,
        found: String,
    },
    #[error("{message}")]
    Unsupported { span: SourceSpan, message: String },
}

impl FrontendError {
    pub fn span(&self) -> &SourceSpan {
        match self {
            FrontendError::IllegalCharacter { span, .. }
            | FrontendError::Unterminated { span, .. }
            | FrontendError::Syntax { span, .. }
            | FrontendError::Unsupported { span, .. } => span,
        }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::error(Some(self.span().clone()), self.to_string())
    }
}

/// Tokenizes and parses one source file.
pub fn parse_source(file: &str, source: &str) -> Result<DesignFile, FrontendError> {
    let tokens = tokenize(file, source)?;
    parse(&tokens)
}

//! Tokenizer for QHDL sources.
//!
//! Accepts the VHDL basic character set. Identifiers and reserved words are
//! folded to lowercase; `--` line comments and `/* */` block comments are
//! dropped.

use std::sync::Arc;

use super::span::SourceSpan;
use super::token::{Keyword, LiteralKind, Symbol, Token, TokenKind};
use super::FrontendError;

struct Lexer<'a> {
    file: Arc<str>,
    src: &'a str,
    pos: usize,
    line: u32,
    column: u32,
    tokens: Vec<Token>,
}

/// Splits `source` into tokens. `file` is only used for spans.
pub fn tokenize(file: &str, source: &str) -> Result<Vec<Token>, FrontendError> {
    let mut lexer = Lexer {
        file: Arc::from(file),
        src: source,
        pos: 0,
        line: 1,
        column: 1,
        tokens: Vec::new(),
    };
    lexer.run()?;
    Ok(lexer.tokens)
}

/// Span pointing just past the last character of `source`; used for
/// "unexpected end of file" diagnostics.
pub fn eof_span(file: &str, source: &str) -> SourceSpan {
    let mut line = 1;
    let mut column = 1;
    for c in source.chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    SourceSpan::new(Arc::from(file), line, column, source.len(), 0)
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: (usize, u32, u32)) -> SourceSpan {
        SourceSpan::new(self.file.clone(), start.1, start.2, start.0, self.pos - start.0)
    }

    fn mark(&self) -> (usize, u32, u32) {
        (self.pos, self.line, self.column)
    }

    fn push(&mut self, kind: TokenKind, text: String, start: (usize, u32, u32)) {
        let span = self.span_from(start);
        self.tokens.push(Token { kind, text, span });
    }

    fn run(&mut self) -> Result<(), FrontendError> {
        while let Some(c) = self.peek() {
            let start = self.mark();
            match c {
                ' ' | '\t' | '\r' | '\n' | '\x0b' | '\x0c' => {
                    self.bump();
                }
                '-' if self.peek_at(1) == Some('-') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                '/' if self.peek_at(1) == Some('*') => self.block_comment(start)?,
                'a'..='z' | 'A'..='Z' => self.word(start),
                '0'..='9' => self.number(start),
                '"' => self.string(start)?,
                '\'' if self.is_character_literal() => {
                    self.bump();
                    self.bump();
                    self.bump();
                    let text = self.src[start.0..self.pos].to_string();
                    self.push(TokenKind::Literal(LiteralKind::Character), text, start);
                }
                _ => self.symbol(c, start)?,
            }
        }
        Ok(())
    }

    fn block_comment(&mut self, start: (usize, u32, u32)) -> Result<(), FrontendError> {
        self.bump();
        self.bump();
        loop {
            match self.bump() {
                Some('*') if self.peek() == Some('/') => {
                    self.bump();
                    return Ok(());
                }
                Some(_) => {}
                None => {
                    return Err(FrontendError::Unterminated {
                        span: self.span_from(start),
                        what: "block comment",
                    })
                }
            }
        }
    }

    fn word(&mut self, start: (usize, u32, u32)) {
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        let text = self.src[start.0..self.pos].to_ascii_lowercase();
        let kind = match Keyword::lookup(&text) {
            Some(kw) => TokenKind::Keyword(kw),
            None => TokenKind::Identifier,
        };
        self.push(kind, text, start);
    }

    fn number(&mut self, start: (usize, u32, u32)) {
        let digits = |lx: &mut Self| {
            while matches!(lx.peek(), Some(c) if c.is_ascii_digit() || c == '_') {
                lx.bump();
            }
        };
        digits(self);
        if self.peek() == Some('.') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit()) {
            self.bump();
            digits(self);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let sign = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if matches!(self.peek_at(digit_at), Some(c) if c.is_ascii_digit()) {
                self.bump();
                if sign {
                    self.bump();
                }
                digits(self);
            }
        }
        let text = self.src[start.0..self.pos].to_string();
        self.push(TokenKind::Literal(LiteralKind::Number), text, start);
    }

    fn string(&mut self, start: (usize, u32, u32)) -> Result<(), FrontendError> {
        self.bump();
        loop {
            match self.bump() {
                Some('"') if self.peek() == Some('"') => {
                    self.bump();
                }
                Some('"') => break,
                Some('\n') | None => {
                    return Err(FrontendError::Unterminated {
                        span: self.span_from(start),
                        what: "string literal",
                    })
                }
                Some(_) => {}
            }
        }
        let text = self.src[start.0..self.pos].to_string();
        self.push(TokenKind::Literal(LiteralKind::String), text, start);
        Ok(())
    }

    /// A tick starts a character literal unless it follows something an
    /// attribute can be applied to (`clk'event`).
    fn is_character_literal(&self) -> bool {
        let after_name = matches!(
            self.tokens.last(),
            Some(t) if t.kind == TokenKind::Identifier
                || t.is_symbol(Symbol::RParen)
                || t.kind == TokenKind::Literal(LiteralKind::String)
        );
        !after_name
            && matches!(self.peek_at(1), Some(c) if c != '\n')
            && self.peek_at(2) == Some('\'')
    }

    fn symbol(&mut self, c: char, start: (usize, u32, u32)) -> Result<(), FrontendError> {
        let next = self.peek_at(1);
        let (sym, len) = match (c, next) {
            ('=', Some('>')) => (Symbol::Arrow, 2),
            ('<', Some('=')) => (Symbol::LessEq, 2),
            ('<', Some('>')) => (Symbol::Box, 2),
            (':', Some('=')) => (Symbol::ColonEq, 2),
            ('/', Some('=')) => (Symbol::NotEq, 2),
            ('>', Some('=')) => (Symbol::GreaterEq, 2),
            ('*', Some('*')) => (Symbol::DoubleStar, 2),
            (';', _) => (Symbol::Semicolon, 1),
            (':', _) => (Symbol::Colon, 1),
            (',', _) => (Symbol::Comma, 1),
            ('(', _) => (Symbol::LParen, 1),
            (')', _) => (Symbol::RParen, 1),
            ('.', _) => (Symbol::Dot, 1),
            ('=', _) => (Symbol::Eq, 1),
            ('<', _) => (Symbol::Less, 1),
            ('>', _) => (Symbol::Greater, 1),
            ('&', _) => (Symbol::Ampersand, 1),
            ('\'', _) => (Symbol::Tick, 1),
            ('+', _) => (Symbol::Plus, 1),
            ('-', _) => (Symbol::Minus, 1),
            ('*', _) => (Symbol::Star, 1),
            ('/', _) => (Symbol::Slash, 1),
            ('|', _) => (Symbol::Bar, 1),
            _ => {
                self.bump();
                return Err(FrontendError::IllegalCharacter {
                    span: self.span_from(start),
                    ch: c,
                });
            }
        };
        for _ in 0..len {
            self.bump();
        }
        self.push(TokenKind::Symbol(sym), sym.as_str().to_string(), start);
        Ok(())
    }
}

//! Recursive descent parser for the QHDL subset.
//!
//! Parsing stops at the first error. Classical VHDL statements (processes,
//! concurrent assignments, component declarations) are skipped over and
//! recorded so that rule checking can reject them with a precise location.

use super::ast::*;
use super::span::SourceSpan;
use super::token::{Keyword, Symbol, Token, TokenKind};
use super::FrontendError;

pub fn parse(tokens: &[Token]) -> Result<DesignFile, FrontendError> {
    Parser::new(tokens).design_file()
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    eof: SourceSpan,
    library_qhdl: bool,
}

type PResult<T> = Result<T, FrontendError>;

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token]) -> Self {
        let eof = match tokens.last() {
            Some(t) => SourceSpan::new(
                t.span.file.clone(),
                t.span.line,
                t.span.column + t.span.length as u32,
                t.span.end(),
                0,
            ),
            None => SourceSpan::synthetic(),
        };
        Parser {
            tokens,
            pos: 0,
            eof,
            library_qhdl: false,
        }
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_nth(&self, n: usize) -> Option<&'t Token> {
        self.tokens.get(self.pos + n)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> SourceSpan {
        self.tokens[self.pos - 1].span.clone()
    }

    fn error<T>(&self, expected: impl Into<String>) -> PResult<T> {
        let (span, found) = match self.peek() {
            Some(t) => (t.span.clone(), t.to_string()),
            None => (self.eof.clone(), "end of file".to_string()),
        };
        Err(FrontendError::Syntax {
            span,
            expected: expected.into(),
            found,
        })
    }

    fn at_keyword(&self, kw: Keyword) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(kw))
    }

    fn at_symbol(&self, sym: Symbol) -> bool {
        self.peek().is_some_and(|t| t.is_symbol(sym))
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        if self.at_keyword(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_symbol(&mut self, sym: Symbol) -> bool {
        if self.at_symbol(sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: Keyword, text: &str) -> PResult<SourceSpan> {
        if self.eat_keyword(kw) {
            Ok(self.prev_span())
        } else {
            self.error(format!("`{text}`"))
        }
    }

    fn expect_symbol(&mut self, sym: Symbol) -> PResult<SourceSpan> {
        if self.eat_symbol(sym) {
            Ok(self.prev_span())
        } else {
            self.error(format!("`{}`", sym.as_str()))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                self.pos += 1;
                Ok(Ident::new(t.text.clone(), t.span.clone()))
            }
            Some(t) if matches!(t.kind, TokenKind::Keyword(_)) => Err(FrontendError::Syntax {
                span: t.span.clone(),
                expected: what.to_string(),
                found: format!("reserved word `{}`", t.text),
            }),
            _ => self.error(what),
        }
    }

    fn ident_list(&mut self, what: &str) -> PResult<Vec<Ident>> {
        let mut names = vec![self.ident(what)?];
        while self.eat_symbol(Symbol::Comma) {
            names.push(self.ident(what)?);
        }
        Ok(names)
    }

    /// `end [<kw>] [<name>] ;`
    fn end_of_unit(&mut self, kw: Keyword, kw_text: &str, name: &Ident) -> PResult<SourceSpan> {
        self.expect_keyword(Keyword::End, "end")?;
        self.eat_keyword(kw);
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Identifier {
                if t.text != name.name {
                    return self.error(format!("`{}` or `;` after `end {kw_text}`", name.name));
                }
                self.pos += 1;
            }
        }
        self.expect_symbol(Symbol::Semicolon)
    }

    fn design_file(mut self) -> PResult<DesignFile> {
        let mut file = DesignFile::default();
        while let Some(t) = self.peek() {
            match t.kind {
                TokenKind::Keyword(Keyword::Library) | TokenKind::Keyword(Keyword::Use) => {
                    file.context_clauses.push(self.context_clause()?)
                }
                TokenKind::Keyword(Keyword::Entity) => file.entities.push(self.entity()?),
                TokenKind::Keyword(Keyword::Architecture) => {
                    file.architectures.push(self.architecture()?)
                }
                _ => return self.error("`library`, `use`, `entity` or `architecture`"),
            }
        }
        Ok(file)
    }

    fn context_clause(&mut self) -> PResult<ContextClause> {
        let start = self.peek().unwrap().span.clone();
        if self.eat_keyword(Keyword::Library) {
            let names = self.ident_list("library name")?;
            if names.iter().any(|n| n.name == "qhdl") {
                self.library_qhdl = true;
            }
            let end = self.expect_symbol(Symbol::Semicolon)?;
            return Ok(ContextClause::Library {
                names,
                span: start.to(&end),
            });
        }
        self.expect_keyword(Keyword::Use, "use")?;
        let lib = self.ident("library name")?;
        if lib.name != "qhdl" {
            return Err(FrontendError::Unsupported {
                span: lib.span,
                message: "only `use qhdl.std.all;` is supported".into(),
            });
        }
        if !self.library_qhdl {
            return Err(FrontendError::Unsupported {
                span: lib.span,
                message: "library `qhdl` is not declared; add `library qhdl;`".into(),
            });
        }
        self.expect_symbol(Symbol::Dot)?;
        let pkg = self.ident("package name")?;
        if pkg.name != "std" {
            return Err(FrontendError::Unsupported {
                span: pkg.span,
                message: "only `use qhdl.std.all;` is supported".into(),
            });
        }
        self.expect_symbol(Symbol::Dot)?;
        let all_span = self.expect_keyword(Keyword::All, "all")?;
        let end = self.expect_symbol(Symbol::Semicolon)?;
        Ok(ContextClause::Use {
            path: vec![lib, pkg, Ident::new("all", all_span)],
            span: start.to(&end),
        })
    }

    fn entity(&mut self) -> PResult<EntityDecl> {
        let start = self.expect_keyword(Keyword::Entity, "entity")?;
        let name = self.ident("entity name")?;
        self.expect_keyword(Keyword::Is, "is")?;
        let mut ports = Vec::new();
        if self.eat_keyword(Keyword::Port) {
            self.expect_symbol(Symbol::LParen)?;
            loop {
                ports.extend(self.interface_decl()?);
                if !self.eat_symbol(Symbol::Semicolon) {
                    break;
                }
            }
            self.expect_symbol(Symbol::RParen)?;
            self.expect_symbol(Symbol::Semicolon)?;
        }
        let end = self.end_of_unit(Keyword::Entity, "entity", &name)?;
        Ok(EntityDecl {
            name,
            ports,
            span: start.to(&end),
        })
    }

    fn interface_decl(&mut self) -> PResult<Vec<PortDecl>> {
        let names = self.ident_list("port name")?;
        self.expect_symbol(Symbol::Colon)?;
        let mode = if self.eat_keyword(Keyword::In) {
            PortMode::In
        } else if self.eat_keyword(Keyword::Out) {
            PortMode::Out
        } else if let Some(t) = self.peek().filter(|t| {
            t.is_keyword(Keyword::Reserved) && matches!(t.text.as_str(), "inout" | "buffer" | "linkage")
        }) {
            return Err(FrontendError::Unsupported {
                span: t.span.clone(),
                message: format!("port mode `{}` is not supported; use `in` or `out`", t.text),
            });
        } else {
            PortMode::In
        };
        let type_mark = self.type_mark()?;
        let end = self.prev_span();
        Ok(names
            .into_iter()
            .map(|name| PortDecl {
                span: name.span.to(&end),
                name,
                mode,
                type_mark,
            })
            .collect())
    }

    fn type_mark(&mut self) -> PResult<TypeMark> {
        if self.eat_keyword(Keyword::Bit) {
            Ok(TypeMark::Bit)
        } else if self.eat_keyword(Keyword::Qbit) {
            Ok(TypeMark::Qbit)
        } else {
            self.error("type `bit` or `qbit`")
        }
    }

    fn architecture(&mut self) -> PResult<ArchitectureBody> {
        let start = self.expect_keyword(Keyword::Architecture, "architecture")?;
        let name = self.ident("architecture name")?;
        self.expect_keyword(Keyword::Of, "of")?;
        let entity_name = self.ident("entity name")?;
        self.expect_keyword(Keyword::Is, "is")?;

        let mut signal_decls = Vec::new();
        let mut classical = Vec::new();
        loop {
            if self.at_keyword(Keyword::Signal) {
                signal_decls.extend(self.signal_decl()?);
            } else if self.at_keyword(Keyword::Component) {
                classical.push(self.component_decl()?);
            } else {
                break;
            }
        }
        if !self.eat_keyword(Keyword::Begin) {
            return self.error("`signal`, `component` or `begin`");
        }

        let mut instances = Vec::new();
        while !self.at_keyword(Keyword::End) {
            match self.statement()? {
                Statement::Instance(i) => instances.push(i),
                Statement::Classical(c) => classical.push(c),
            }
        }
        let end = self.end_of_unit(Keyword::Architecture, "architecture", &name)?;
        Ok(ArchitectureBody {
            name,
            entity_name,
            signal_decls,
            instances,
            classical,
            span: start.to(&end),
        })
    }

    fn signal_decl(&mut self) -> PResult<Vec<SignalDecl>> {
        self.expect_keyword(Keyword::Signal, "signal")?;
        let names = self.ident_list("signal name")?;
        self.expect_symbol(Symbol::Colon)?;
        let type_mark = self.type_mark()?;
        if self.at_symbol(Symbol::ColonEq) {
            return Err(FrontendError::Unsupported {
                span: self.peek().unwrap().span.clone(),
                message: "signal initial values are not supported".into(),
            });
        }
        let end = self.expect_symbol(Symbol::Semicolon)?;
        Ok(names
            .into_iter()
            .map(|name| SignalDecl {
                span: name.span.to(&end),
                name,
                type_mark,
            })
            .collect())
    }

    fn component_decl(&mut self) -> PResult<ClassicalConstruct> {
        let start = self.expect_keyword(Keyword::Component, "component")?;
        let label = self.ident("component name")?;
        let end = self.skip_to_end(Keyword::Component, "component")?;
        Ok(ClassicalConstruct {
            kind: ClassicalKind::ComponentDeclaration,
            label: Some(label),
            span: start.to(&end),
        })
    }

    /// Skips tokens up to and including `end <kw> [name] ;`.
    fn skip_to_end(&mut self, kw: Keyword, kw_text: &str) -> PResult<SourceSpan> {
        loop {
            match self.peek() {
                None => return self.error(format!("`end {kw_text}`")),
                Some(t) if t.is_keyword(Keyword::End)
                    && self.peek_nth(1).is_some_and(|n| n.is_keyword(kw)) =>
                {
                    self.pos += 2;
                    if self.peek().is_some_and(|t| t.kind == TokenKind::Identifier) {
                        self.pos += 1;
                    }
                    return self.expect_symbol(Symbol::Semicolon);
                }
                Some(_) => self.pos += 1,
            }
        }
    }

    fn skip_to_semicolon(&mut self) -> PResult<SourceSpan> {
        loop {
            match self.bump() {
                None => return self.error("`;`"),
                Some(t) if t.is_symbol(Symbol::Semicolon) => return Ok(t.span.clone()),
                Some(_) => {}
            }
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        let Some(first) = self.peek() else {
            return self.error("`end`");
        };
        let start = first.span.clone();
        if first.is_keyword(Keyword::Process) {
            self.pos += 1;
            let end = self.skip_to_end(Keyword::Process, "process")?;
            return Ok(Statement::Classical(ClassicalConstruct {
                kind: ClassicalKind::Process,
                label: None,
                span: start.to(&end),
            }));
        }
        if first.kind == TokenKind::Identifier
            && self.peek_nth(1).is_some_and(|t| t.is_symbol(Symbol::LessEq))
        {
            let end = self.skip_to_semicolon()?;
            return Ok(Statement::Classical(ClassicalConstruct {
                kind: ClassicalKind::ConcurrentAssignment,
                label: None,
                span: start.to(&end),
            }));
        }

        let label = self.ident("statement label")?;
        self.expect_symbol(Symbol::Colon)?;
        if self.eat_keyword(Keyword::Process) {
            let end = self.skip_to_end(Keyword::Process, "process")?;
            return Ok(Statement::Classical(ClassicalConstruct {
                kind: ClassicalKind::Process,
                label: Some(label),
                span: start.to(&end),
            }));
        }
        if self.peek().is_some_and(|t| t.kind == TokenKind::Identifier)
            && self.peek_nth(1).is_some_and(|t| t.is_symbol(Symbol::LessEq))
        {
            let end = self.skip_to_semicolon()?;
            return Ok(Statement::Classical(ClassicalConstruct {
                kind: ClassicalKind::ConcurrentAssignment,
                label: Some(label),
                span: start.to(&end),
            }));
        }

        self.eat_keyword(Keyword::Component);
        let component_name = self.ident("component name")?;
        self.expect_keyword(Keyword::Port, "port")?;
        self.expect_keyword(Keyword::Map, "map")?;
        self.expect_symbol(Symbol::LParen)?;
        let mut port_map = Vec::new();
        loop {
            let assoc = self.association()?;
            if assoc.formal.is_none() && port_map.iter().any(|a: &Association| a.formal.is_some()) {
                return Err(FrontendError::Syntax {
                    span: assoc.span,
                    expected: "named association after a named association".into(),
                    found: "positional association".into(),
                });
            }
            port_map.push(assoc);
            if !self.eat_symbol(Symbol::Comma) {
                break;
            }
        }
        self.expect_symbol(Symbol::RParen)?;
        let end = self.expect_symbol(Symbol::Semicolon)?;
        Ok(Statement::Instance(ComponentInstance {
            label,
            component_name,
            port_map,
            span: start.to(&end),
        }))
    }

    fn association(&mut self) -> PResult<Association> {
        let first = self.ident("port name or signal name")?;
        if self.eat_symbol(Symbol::Arrow) {
            let actual = self.ident("signal name")?;
            Ok(Association {
                span: first.span.to(&actual.span),
                formal: Some(first),
                actual,
            })
        } else {
            Ok(Association {
                span: first.span.clone(),
                formal: None,
                actual: first,
            })
        }
    }
}

enum Statement {
    Instance(ComponentInstance),
    Classical(ClassicalConstruct),
}

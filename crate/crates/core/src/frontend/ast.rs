//! Syntax tree for the QHDL subset.
//!
//! All identifiers are lowercase. Every node carries the span of the text
//! it was parsed from; [`DesignFile::without_spans`] erases them for
//! structural comparison.

use std::fmt;

use super::span::SourceSpan;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: SourceSpan,
}

impl Ident {
    pub fn new(name: impl Into<String>, span: SourceSpan) -> Self {
        Ident {
            name: name.into(),
            span,
        }
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PortMode {
    In,
    Out,
}

impl PortMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PortMode::In => "in",
            PortMode::Out => "out",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeMark {
    Bit,
    Qbit,
}

impl TypeMark {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeMark::Bit => "bit",
            TypeMark::Qbit => "qbit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextClause {
    /// `library a, b;`
    Library { names: Vec<Ident>, span: SourceSpan },
    /// `use qhdl.std.all;` (the only accepted form).
    Use { path: Vec<Ident>, span: SourceSpan },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortDecl {
    pub name: Ident,
    pub mode: PortMode,
    pub type_mark: TypeMark,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntityDecl {
    pub name: Ident,
    pub ports: Vec<PortDecl>,
    pub span: SourceSpan,
}

impl EntityDecl {
    pub fn port(&self, name: &str) -> Option<&PortDecl> {
        self.ports.iter().find(|p| p.name.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalDecl {
    pub name: Ident,
    pub type_mark: TypeMark,
    pub span: SourceSpan,
}

/// `formal => actual`, or just `actual` for positional association.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Association {
    pub formal: Option<Ident>,
    pub actual: Ident,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInstance {
    pub label: Ident,
    pub component_name: Ident,
    pub port_map: Vec<Association>,
    pub span: SourceSpan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    Process,
    ConcurrentAssignment,
    ComponentDeclaration,
}

impl ClassicalKind {
    pub fn describe(self) -> &'static str {
        match self {
            ClassicalKind::Process => "process statement",
            ClassicalKind::ConcurrentAssignment => "concurrent signal assignment",
            ClassicalKind::ComponentDeclaration => "VHDL component declaration",
        }
    }
}

/// A classical VHDL construct found in an architecture. Only its kind and
/// label are kept; QHDL rejects these during rule checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalConstruct {
    pub kind: ClassicalKind,
    pub label: Option<Ident>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchitectureBody {
    pub name: Ident,
    pub entity_name: Ident,
    pub signal_decls: Vec<SignalDecl>,
    pub instances: Vec<ComponentInstance>,
    pub classical: Vec<ClassicalConstruct>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DesignFile {
    pub context_clauses: Vec<ContextClause>,
    pub entities: Vec<EntityDecl>,
    pub architectures: Vec<ArchitectureBody>,
}

impl DesignFile {
    pub fn entity(&self, name: &str) -> Option<&EntityDecl> {
        self.entities.iter().find(|e| e.name.name == name)
    }

    pub fn architectures_of(&self, entity: &str) -> Vec<&ArchitectureBody> {
        self.architectures
            .iter()
            .filter(|a| a.entity_name.name == entity)
            .collect()
    }

    /// Appends the units of `other`, as when several source files are
    /// analyzed into one library.
    pub fn merge(&mut self, other: DesignFile) {
        self.context_clauses.extend(other.context_clauses);
        self.entities.extend(other.entities);
        self.architectures.extend(other.architectures);
    }

    /// Copy of the tree with every span replaced by a synthetic one.
    pub fn without_spans(&self) -> DesignFile {
        let s = SourceSpan::synthetic;
        let id = |i: &Ident| Ident::new(i.name.clone(), s());
        DesignFile {
            context_clauses: self
                .context_clauses
                .iter()
                .map(|c| match c {
                    ContextClause::Library { names, .. } => ContextClause::Library {
                        names: names.iter().map(id).collect(),
                        span: s(),
                    },
                    ContextClause::Use { path, .. } => ContextClause::Use {
                        path: path.iter().map(id).collect(),
                        span: s(),
                    },
                })
                .collect(),
            entities: self
                .entities
                .iter()
                .map(|e| EntityDecl {
                    name: id(&e.name),
                    ports: e
                        .ports
                        .iter()
                        .map(|p| PortDecl {
                            name: id(&p.name),
                            mode: p.mode,
                            type_mark: p.type_mark,
                            span: s(),
                        })
                        .collect(),
                    span: s(),
                })
                .collect(),
            architectures: self
                .architectures
                .iter()
                .map(|a| ArchitectureBody {
                    name: id(&a.name),
                    entity_name: id(&a.entity_name),
                    signal_decls: a
                        .signal_decls
                        .iter()
                        .map(|d| SignalDecl {
                            name: id(&d.name),
                            type_mark: d.type_mark,
                            span: s(),
                        })
                        .collect(),
                    instances: a
                        .instances
                        .iter()
                        .map(|i| ComponentInstance {
                            label: id(&i.label),
                            component_name: id(&i.component_name),
                            port_map: i
                                .port_map
                                .iter()
                                .map(|assoc| Association {
                                    formal: assoc.formal.as_ref().map(id),
                                    actual: id(&assoc.actual),
                                    span: s(),
                                })
                                .collect(),
                            span: s(),
                        })
                        .collect(),
                    classical: a
                        .classical
                        .iter()
                        .map(|c| ClassicalConstruct {
                            kind: c.kind,
                            label: c.label.as_ref().map(id),
                            span: s(),
                        })
                        .collect(),
                    span: s(),
                })
                .collect(),
        }
    }

    /// Visits every span in the tree.
    pub fn spans(&self) -> Vec<&SourceSpan> {
        let mut out = Vec::new();
        for c in &self.context_clauses {
            match c {
                ContextClause::Library { names, span } | ContextClause::Use { path: names, span } => {
                    out.push(span);
                    out.extend(names.iter().map(|n| &n.span));
                }
            }
        }
        for e in &self.entities {
            out.push(&e.span);
            out.push(&e.name.span);
            for p in &e.ports {
                out.push(&p.span);
                out.push(&p.name.span);
            }
        }
        for a in &self.architectures {
            out.push(&a.span);
            out.push(&a.name.span);
            out.push(&a.entity_name.span);
            for d in &a.signal_decls {
                out.push(&d.span);
                out.push(&d.name.span);
            }
            for i in &a.instances {
                out.push(&i.span);
                out.push(&i.label.span);
                out.push(&i.component_name.span);
                for assoc in &i.port_map {
                    out.push(&assoc.span);
                    out.push(&assoc.actual.span);
                    if let Some(f) = &assoc.formal {
                        out.push(&f.span);
                    }
                }
            }
            for c in &a.classical {
                out.push(&c.span);
                if let Some(l) = &c.label {
                    out.push(&l.span);
                }
            }
        }
        out
    }
}

use std::fmt;

use super::span::SourceSpan;

/// Reserved words. The first group is the QHDL subset proper; `Process`
/// and `Component` are recognized so that non-quantum constructs can be
/// reported precisely. Every other VHDL reserved word lexes as `Reserved`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Keyword {
    Library,
    Use,
    All,
    Entity,
    Is,
    Port,
    In,
    Out,
    End,
    Architecture,
    Of,
    Signal,
    Begin,
    Map,
    Bit,
    Qbit,
    Process,
    Component,
    Reserved,
}

const OTHER_RESERVED: &[&str] = &[
    "abs", "access", "after", "alias", "and", "array", "assert", "assume",
    "assume_guarantee", "attribute", "block", "body", "buffer", "bus", "case",
    "configuration", "constant", "context", "cover", "default", "disconnect",
    "downto", "else", "elsif", "exit", "fairness", "file", "for", "force", "function",
    "generate", "generic", "group", "guarded", "if", "impure", "inertial", "inout",
    "label", "linkage", "literal", "loop", "mod", "nand", "new", "next", "nor", "not",
    "null", "on", "open", "or", "others", "package", "parameter", "postponed",
    "procedure", "property", "protected", "pure", "range", "record", "register",
    "reject", "release", "rem", "report", "restrict", "restrict_guarantee", "return",
    "rol", "ror", "select", "sequence", "severity", "shared", "sla", "sll", "sra",
    "srl", "strong", "subtype", "then", "to", "transport", "type", "unaffected",
    "units", "until", "variable", "vmode", "vprop", "vunit", "wait", "when", "while",
    "with", "xnor", "xor",
];

impl Keyword {
    /// Looks up a lowercase word.
    pub fn lookup(word: &str) -> Option<Keyword> {
        let kw = match word {
            "library" => Keyword::Library,
            "use" => Keyword::Use,
            "all" => Keyword::All,
            "entity" => Keyword::Entity,
            "is" => Keyword::Is,
            "port" => Keyword::Port,
            "in" => Keyword::In,
            "out" => Keyword::Out,
            "end" => Keyword::End,
            "architecture" => Keyword::Architecture,
            "of" => Keyword::Of,
            "signal" => Keyword::Signal,
            "begin" => Keyword::Begin,
            "map" => Keyword::Map,
            "bit" => Keyword::Bit,
            "qbit" => Keyword::Qbit,
            "process" => Keyword::Process,
            "component" => Keyword::Component,
            w if OTHER_RESERVED.binary_search(&w).is_ok() => Keyword::Reserved,
            _ => return None,
        };
        Some(kw)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Semicolon,
    Colon,
    Comma,
    LParen,
    RParen,
    Dot,
    Arrow,
    // Delimiters outside the QHDL subset. They only appear legally inside
    // constructs that are reported as non-quantum logic.
    LessEq,
    ColonEq,
    Eq,
    NotEq,
    GreaterEq,
    Less,
    Greater,
    Box,
    Ampersand,
    Tick,
    Plus,
    Minus,
    Star,
    DoubleStar,
    Slash,
    Bar,
}

impl Symbol {
    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::Semicolon => ";",
            Symbol::Colon => ":",
            Symbol::Comma => ",",
            Symbol::LParen => "(",
            Symbol::RParen => ")",
            Symbol::Dot => ".",
            Symbol::Arrow => "=>",
            Symbol::LessEq => "<=",
            Symbol::ColonEq => ":=",
            Symbol::Eq => "=",
            Symbol::NotEq => "/=",
            Symbol::GreaterEq => ">=",
            Symbol::Less => "<",
            Symbol::Greater => ">",
            Symbol::Box => "<>",
            Symbol::Ampersand => "&",
            Symbol::Tick => "'",
            Symbol::Plus => "+",
            Symbol::Minus => "-",
            Symbol::Star => "*",
            Symbol::DoubleStar => "**",
            Symbol::Slash => "/",
            Symbol::Bar => "|",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiteralKind {
    Number,
    Character,
    String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Identifier,
    Keyword(Keyword),
    Symbol(Symbol),
    Literal(LiteralKind),
}

/// A lexed token. Identifiers and keywords carry lowercase text; symbols
/// and literals carry their source text verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: SourceSpan,
}

impl Token {
    pub fn is_keyword(&self, kw: Keyword) -> bool {
        self.kind == TokenKind::Keyword(kw)
    }

    pub fn is_symbol(&self, sym: Symbol) -> bool {
        self.kind == TokenKind::Symbol(sym)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Identifier => write!(f, "identifier `{}`", self.text),
            TokenKind::Keyword(_) => write!(f, "keyword `{}`", self.text),
            TokenKind::Symbol(_) => write!(f, "`{}`", self.text),
            TokenKind::Literal(_) => write!(f, "literal {}", self.text),
        }
    }
}

use std::fmt;

use crate::frontend::SourceSpan;

/// The three QHDL semantic rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// No cloning: a qbit signal has one driver and one sink.
    SingleDriverSingleSink = 1,
    /// The top-level entity has no qbit ports.
    NoTopLevelQbitPorts = 2,
    /// Architectures contain only component instantiations.
    NoClassicalLogic = 3,
}

impl Rule {
    pub fn number(self) -> u8 {
        self as u8
    }

    fn roman(self) -> &'static str {
        match self {
            Rule::SingleDriverSingleSink => "i",
            Rule::NoTopLevelQbitPorts => "ii",
            Rule::NoClassicalLogic => "iii",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Option<SourceSpan>,
    pub rule: Option<Rule>,
    pub message: String,
}

impl Diagnostic {
    pub fn error(span: Option<SourceSpan>, message: impl Into<String>) -> Self {
        Diagnostic {
            span,
            rule: None,
            message: message.into(),
        }
    }

    pub fn rule(rule: Rule, span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic {
            span: Some(span),
            rule: Some(rule),
            message: message.into(),
        }
    }

    /// Renders as `file:line:col: error: message`, optionally with ANSI
    /// color on the severity.
    pub fn render(&self, color: bool) -> String {
        let location = match &self.span {
            Some(span) => format!("{span}: "),
            None => String::new(),
        };
        let severity = if color {
            "\x1b[1;31merror\x1b[0m"
        } else {
            "error"
        };
        format!("{location}{severity}: {self}")
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            Some(rule) => write!(f, "[rule {}] {}", rule.roman(), self.message),
            None => f.write_str(&self.message),
        }
    }
}

//! Elaboration: binding, flattening, rule checking, qubit inference,
//! scheduling and wrapper emission.

pub mod builtins;
mod flatten;
pub mod netlist;
mod rules;
mod schedule;
mod signals;
mod wires;
mod wrapper;

use thiserror::Error;

pub use builtins::{BuiltinGate, GateKind, UnitaryKind};
pub use flatten::bind_and_flatten;
pub use netlist::{Connectivity, Endpoint, GateInstance, Net, NetId, Netlist, TopPort};
pub use rules::check_qbit_rules;
pub use schedule::{schedule, Schedule, ScheduledOp};
pub use signals::check_signals;
pub(crate) use signals::clock_port;
pub use wires::{infer_qubit_wires, QubitWireAssignment, UnionFind, DEFAULT_QUBIT_LIMIT};
pub use wrapper::{emit_vhdl_wrapper, netlist_hash};

use crate::diagnostic::Diagnostic;
use crate::frontend::SourceSpan;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ElabError {
    #[error("entity `{name}` is not declared")]
    UnknownEntity { name: String, span: Option<SourceSpan> },
    #[error("`{name}` is declared more than once")]
    DuplicateDeclaration { name: String, span: SourceSpan },
    #[error("instance `{label}`: unknown component `{component}`")]
    UnknownComponent {
        label: String,
        component: String,
        span: SourceSpan,
    },
    #[error("entity `{entity}` has no architecture")]
    MissingArchitecture { entity: String, span: SourceSpan },
    #[error("entity `{entity}` has more than one architecture")]
    MultipleArchitectures { entity: String, span: SourceSpan },
    #[error("instance `{label}`, port `{formal}`: {reason}")]
    PortMapMismatch {
        label: String,
        formal: String,
        reason: String,
        span: SourceSpan,
    },
    #[error("signal `{name}` is not declared")]
    UnknownSignal { name: String, span: SourceSpan },
    #[error("recursive instantiation: {}", cycle.join(" -> "))]
    RecursiveInstantiation { cycle: Vec<String>, span: SourceSpan },
    #[error("circuit needs {n} qubits, more than the limit of {limit}")]
    QubitLimitExceeded { n: usize, limit: usize },
    #[error("combinational quantum loop through {}", gates.join(", "))]
    CombinationalQuantumLoop { gates: Vec<String>, span: SourceSpan },
    #[error("`{gate}` uses the qubit output of measurement `{measure}` in the same clock cycle; only qset may follow a qmeasure")]
    GateAfterMeasurement {
        gate: String,
        measure: String,
        span: SourceSpan,
    },
}

impl ElabError {
    pub fn span(&self) -> Option<&SourceSpan> {
        match self {
            ElabError::UnknownEntity { span, .. } => span.as_ref(),
            ElabError::QubitLimitExceeded { .. } => None,
            ElabError::DuplicateDeclaration { span, .. }
            | ElabError::UnknownComponent { span, .. }
            | ElabError::MissingArchitecture { span, .. }
            | ElabError::MultipleArchitectures { span, .. }
            | ElabError::PortMapMismatch { span, .. }
            | ElabError::UnknownSignal { span, .. }
            | ElabError::RecursiveInstantiation { span, .. }
            | ElabError::CombinationalQuantumLoop { span, .. }
            | ElabError::GateAfterMeasurement { span, .. } => Some(span),
        }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::error(self.span().cloned(), self.to_string())
    }
}

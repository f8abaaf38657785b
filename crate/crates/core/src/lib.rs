//! QHDL: a VHDL subset for gate-level quantum circuits.
//!
//! The pipeline is [`frontend`] (tokens and syntax tree), [`elab`]
//! (flattening, rule checks, qubit inference, scheduling), [`sim`] (the
//! clocked state-vector engine) and [`harness`] (stimulus, VCD, traces and
//! histograms). [`compile`] strings the first two together.

pub mod compile;
pub mod diagnostic;
pub mod elab;
pub mod frontend;
pub mod harness;
pub mod sim;

pub use compile::{compile, CompileOptions, Compiled, SourceFile};
pub use diagnostic::{Diagnostic, Rule};

/// Designs shipped with the crate.
pub mod samples {
    /// The Bell pair generator: two prepared qubits, a Hadamard, a CNOT and
    /// two measurements, with the post-measurement qubits fed back into the
    /// setup gates.
    pub const BELLSTATE: &str = include_str!("../designs/bellstate.qhdl");
}

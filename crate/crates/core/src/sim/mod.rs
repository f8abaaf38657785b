//! Clocked state-vector simulation.

mod engine;
mod rng;
mod state;

use thiserror::Error;

pub use engine::{
    BitSource, ClockConfig, CycleRecord, Engine, Op, PortRole, Program, ProgramOp, ProgramPort, SimTime,
};
pub use rng::SimRng;
pub use state::{StateVector, NORM_UNDERFLOW};

use crate::elab::UnitaryKind;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SimError {
    #[error("{n} qubits exceed the limit of {limit}")]
    QubitLimitExceeded { n: usize, limit: usize },
    #[error("amplitude vector length {0} is not a power of two")]
    BadLength(usize),
    #[error("qubit {qubit} out of range for a {n}-qubit state")]
    IndexOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} used twice by one gate")]
    DuplicateQubit(usize),
    #[error("{kind:?} takes {expected} qubits, got {got}")]
    Arity {
        kind: UnitaryKind,
        expected: usize,
        got: usize,
    },
    #[error("measurement of qubit {qubit} selected a branch of probability {probability:e}")]
    NormUnderflow { qubit: usize, probability: f64 },
    #[error("expected {expected} input values, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("clock period must be at least 2 fs, got {0}")]
    InvalidClock(u64),
    #[error("simulation time overflows at cycle {0}")]
    TimeOverflow(u64),
    #[error("{0}")]
    Sequence(&'static str),
}

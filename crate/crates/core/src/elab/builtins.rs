//! The `qhdl.std` package: built-in gates and their pin layouts.

use crate::frontend::ast::{PortMode, TypeMark};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitaryKind {
    Not,
    Hadamard,
    Cnot,
    Toffoli,
    Fredkin,
}

impl UnitaryKind {
    /// Number of qubits the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            UnitaryKind::Not | UnitaryKind::Hadamard => 1,
            UnitaryKind::Cnot => 2,
            UnitaryKind::Toffoli | UnitaryKind::Fredkin => 3,
        }
    }

    pub const ALL: [UnitaryKind; 5] = [
        UnitaryKind::Not,
        UnitaryKind::Hadamard,
        UnitaryKind::Cnot,
        UnitaryKind::Toffoli,
        UnitaryKind::Fredkin,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Setup,
    Measure,
    Unitary(UnitaryKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuiltinPort {
    pub name: &'static str,
    pub mode: PortMode,
    pub type_mark: TypeMark,
}

#[derive(Debug, PartialEq, Eq)]
pub struct BuiltinGate {
    pub name: &'static str,
    pub ports: &'static [BuiltinPort],
    pub kind: GateKind,
    /// `(input port, output port)` index pairs carrying the same physical
    /// qubit. For unitaries the order of the pairs is the operand order of
    /// the kernel (controls first).
    pub pass_through: &'static [(usize, usize)],
}

impl BuiltinGate {
    pub fn port_index(&self, name: &str) -> Option<usize> {
        self.ports.iter().position(|p| p.name == name)
    }

    /// Number of qubits the gate touches.
    pub fn arity(&self) -> usize {
        self.pass_through.len()
    }

    pub fn is_clocked(&self) -> bool {
        matches!(self.kind, GateKind::Setup | GateKind::Measure)
    }
}

const fn port(name: &'static str, mode: PortMode, type_mark: TypeMark) -> BuiltinPort {
    BuiltinPort {
        name,
        mode,
        type_mark,
    }
}

use PortMode::{In, Out};
use TypeMark::{Bit, Qbit};

pub static QSET: BuiltinGate = BuiltinGate {
    name: "qset",
    ports: &[
        port("clk", In, Bit),
        port("d", In, Qbit),
        port("q", Out, Qbit),
        port("set", In, Bit),
    ],
    kind: GateKind::Setup,
    pass_through: &[(1, 2)],
};

pub static QMEASURE: BuiltinGate = BuiltinGate {
    name: "qmeasure",
    ports: &[
        port("clk", In, Bit),
        port("d", In, Qbit),
        port("q", Out, Qbit),
        port("result", Out, Bit),
    ],
    kind: GateKind::Measure,
    pass_through: &[(1, 2)],
};

pub static QNOT: BuiltinGate = BuiltinGate {
    name: "qnot",
    ports: &[port("d", In, Qbit), port("q", Out, Qbit)],
    kind: GateKind::Unitary(UnitaryKind::Not),
    pass_through: &[(0, 1)],
};

pub static QHADAMARD: BuiltinGate = BuiltinGate {
    name: "qhadamard",
    ports: &[port("d", In, Qbit), port("q", Out, Qbit)],
    kind: GateKind::Unitary(UnitaryKind::Hadamard),
    pass_through: &[(0, 1)],
};

pub static QCNOT: BuiltinGate = BuiltinGate {
    name: "qcnot",
    ports: &[
        port("c_in", In, Qbit),
        port("c_out", Out, Qbit),
        port("d", In, Qbit),
        port("q", Out, Qbit),
    ],
    kind: GateKind::Unitary(UnitaryKind::Cnot),
    pass_through: &[(0, 1), (2, 3)],
};

pub static QTOFFOLI: BuiltinGate = BuiltinGate {
    name: "qtoffoli",
    ports: &[
        port("c0_in", In, Qbit),
        port("c1_in", In, Qbit),
        port("c0_out", Out, Qbit),
        port("c1_out", Out, Qbit),
        port("d", In, Qbit),
        port("q", Out, Qbit),
    ],
    kind: GateKind::Unitary(UnitaryKind::Toffoli),
    pass_through: &[(0, 2), (1, 3), (4, 5)],
};

pub static QFREDKIN: BuiltinGate = BuiltinGate {
    name: "qfredkin",
    ports: &[
        port("c_in", In, Qbit),
        port("c_out", Out, Qbit),
        port("a_in", In, Qbit),
        port("b_in", In, Qbit),
        port("a_out", Out, Qbit),
        port("b_out", Out, Qbit),
    ],
    kind: GateKind::Unitary(UnitaryKind::Fredkin),
    pass_through: &[(0, 1), (2, 4), (3, 5)],
};

pub static CATALOG: [&BuiltinGate; 7] = [
    &QSET, &QMEASURE, &QNOT, &QHADAMARD, &QCNOT, &QTOFFOLI, &QFREDKIN,
];

pub fn lookup(name: &str) -> Option<&'static BuiltinGate> {
    CATALOG.iter().copied().find(|g| g.name == name)
}

//! Flattened gate-level netlist.

use std::fmt::Write;

use super::builtins::{BuiltinGate, GateKind};
use crate::frontend::ast::{PortDecl, PortMode, TypeMark};
use crate::frontend::SourceSpan;

pub type NetId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    pub id: NetId,
    /// Hierarchical name, e.g. `reg_a` or `u1.tmp`.
    pub name: String,
    pub type_mark: TypeMark,
    /// Declaration of the signal or port that created the net.
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateInstance {
    /// Instance path relative to the top entity, e.g. `entangle` or `u1.g1`.
    pub path: String,
    pub gate: &'static BuiltinGate,
    /// Net connected to each port of `gate`, indexed like `gate.ports`.
    pub pins: Vec<NetId>,
    pub span: SourceSpan,
}

impl GateInstance {
    pub fn pin(&self, port: &str) -> Option<NetId> {
        self.gate.port_index(port).map(|i| self.pins[i])
    }

    /// Qubit nets on the input side, in kernel operand order.
    pub fn qubit_inputs(&self) -> impl Iterator<Item = NetId> + '_ {
        self.gate.pass_through.iter().map(|&(i, _)| self.pins[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopPort {
    pub decl: PortDecl,
    pub net: NetId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    pub top: String,
    pub gates: Vec<GateInstance>,
    pub nets: Vec<Net>,
    pub top_ports: Vec<TopPort>,
}

/// One end of a net.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Pin { gate: usize, port: usize },
    TopPort(usize),
}

/// Drivers and sinks of every net. Gate outputs and top-level inputs
/// drive; gate inputs and top-level outputs sink.
#[derive(Clone, Debug, Default)]
pub struct Connectivity {
    pub drivers: Vec<Vec<Endpoint>>,
    pub sinks: Vec<Vec<Endpoint>>,
}

impl Netlist {
    pub fn qnets(&self) -> impl Iterator<Item = &Net> {
        self.nets.iter().filter(|n| n.type_mark == TypeMark::Qbit)
    }

    pub fn cnets(&self) -> impl Iterator<Item = &Net> {
        self.nets.iter().filter(|n| n.type_mark == TypeMark::Bit)
    }

    pub fn gates_of_kind(&self, pred: impl Fn(GateKind) -> bool) -> impl Iterator<Item = (usize, &GateInstance)> {
        self.gates
            .iter()
            .enumerate()
            .filter(move |(_, g)| pred(g.gate.kind))
    }

    pub fn connectivity(&self) -> Connectivity {
        let mut c = Connectivity {
            drivers: vec![Vec::new(); self.nets.len()],
            sinks: vec![Vec::new(); self.nets.len()],
        };
        for (gi, gate) in self.gates.iter().enumerate() {
            for (pi, (&net, port)) in gate.pins.iter().zip(gate.gate.ports).enumerate() {
                let ep = Endpoint::Pin { gate: gi, port: pi };
                match port.mode {
                    PortMode::Out => c.drivers[net].push(ep),
                    PortMode::In => c.sinks[net].push(ep),
                }
            }
        }
        for (ti, tp) in self.top_ports.iter().enumerate() {
            match tp.decl.mode {
                PortMode::In => c.drivers[tp.net].push(Endpoint::TopPort(ti)),
                PortMode::Out => c.sinks[tp.net].push(Endpoint::TopPort(ti)),
            }
        }
        c
    }

    /// Human-readable name of an endpoint, e.g. `setter_a.q` or port `clk`.
    pub fn describe(&self, ep: Endpoint) -> String {
        match ep {
            Endpoint::Pin { gate, port } => {
                let g = &self.gates[gate];
                format!("{}.{}", g.path, g.gate.ports[port].name)
            }
            Endpoint::TopPort(i) => format!("port {}", self.top_ports[i].decl.name.name),
        }
    }

    /// Stable textual form used for hashing and golden comparisons.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "top {}", self.top);
        for p in &self.top_ports {
            let _ = writeln!(
                out,
                "port {} {} {} {}",
                p.decl.name.name,
                p.decl.mode.as_str(),
                p.decl.type_mark.as_str(),
                self.nets[p.net].name
            );
        }
        for n in &self.nets {
            let _ = writeln!(out, "net {} {} {}", n.id, n.name, n.type_mark.as_str());
        }
        for g in &self.gates {
            let _ = write!(out, "gate {} {}", g.path, g.gate.name);
            for (port, &net) in g.gate.ports.iter().zip(&g.pins) {
                let _ = write!(out, " {}={}", port.name, self.nets[net].name);
            }
            out.push('\n');
        }
        out
    }
}

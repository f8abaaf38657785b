//! Per-cycle evaluation order.
//!
//! A cycle runs every setup, then every unitary, then every measurement.
//! Unitaries follow the qbit dataflow (ties broken by declaration order);
//! measurements likewise. Setups keep declaration order: their `d` inputs
//! carry last cycle's qubit, so edges into a setup never constrain order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::builtins::GateKind;
use super::netlist::{Endpoint, Netlist};
use super::ElabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduledOp {
    pub step_index: usize,
    /// Index into `Netlist::gates`.
    pub gate: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub steps: Vec<ScheduledOp>,
}

impl Schedule {
    pub fn steps_total(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    Setup,
    Unitary,
    Measure,
}

fn phase(kind: GateKind) -> Phase {
    match kind {
        GateKind::Setup => Phase::Setup,
        GateKind::Unitary(_) => Phase::Unitary,
        GateKind::Measure => Phase::Measure,
    }
}

pub fn schedule(netlist: &Netlist) -> Result<Schedule, ElabError> {
    let conn = netlist.connectivity();
    let gate_count = netlist.gates.len();

    // Gate-to-gate edges along qbit nets.
    let mut succ = vec![Vec::new(); gate_count];
    for net in netlist.qnets() {
        for d in &conn.drivers[net.id] {
            for s in &conn.sinks[net.id] {
                if let (Endpoint::Pin { gate: from, .. }, Endpoint::Pin { gate: to, .. }) = (*d, *s) {
                    let (pf, pt) = (
                        phase(netlist.gates[from].gate.kind),
                        phase(netlist.gates[to].gate.kind),
                    );
                    if pf == Phase::Measure && pt == Phase::Unitary {
                        return Err(ElabError::GateAfterMeasurement {
                            gate: netlist.gates[to].path.clone(),
                            measure: netlist.gates[from].path.clone(),
                            span: netlist.gates[to].span.clone(),
                        });
                    }
                    if pf == pt && pf != Phase::Setup {
                        succ[from].push(to);
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = netlist
        .gates_of_kind(|k| k == GateKind::Setup)
        .map(|(i, _)| i)
        .collect();
    order.extend(topological(netlist, &succ, Phase::Unitary)?);
    order.extend(topological(netlist, &succ, Phase::Measure)?);

    Ok(Schedule {
        steps: order
            .into_iter()
            .enumerate()
            .map(|(step_index, gate)| ScheduledOp { step_index, gate })
            .collect(),
    })
}

/// Kahn's algorithm restricted to gates of one phase, always emitting the
/// earliest-declared ready gate.
fn topological(netlist: &Netlist, succ: &[Vec<usize>], which: Phase) -> Result<Vec<usize>, ElabError> {
    let members: Vec<usize> = (0..netlist.gates.len())
        .filter(|&g| phase(netlist.gates[g].gate.kind) == which)
        .collect();
    let mut indegree = vec![0usize; netlist.gates.len()];
    for &g in &members {
        for &s in &succ[g] {
            indegree[s] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = members
        .iter()
        .filter(|&&g| indegree[g] == 0)
        .map(|&g| Reverse(g))
        .collect();
    let mut out = Vec::with_capacity(members.len());
    while let Some(Reverse(g)) = ready.pop() {
        out.push(g);
        for &s in &succ[g] {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                ready.push(Reverse(s));
            }
        }
    }
    if out.len() < members.len() {
        let stuck: Vec<usize> = members.into_iter().filter(|&g| indegree[g] > 0).collect();
        return Err(ElabError::CombinationalQuantumLoop {
            gates: stuck.iter().map(|&g| netlist.gates[g].path.clone()).collect(),
            span: netlist.gates[stuck[0]].span.clone(),
        });
    }
    Ok(out)
}

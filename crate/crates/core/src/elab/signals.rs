//! Checks on the classical (`bit`) side of a netlist.
//!
//! Bit nets are driven either by a top-level input or by a `qmeasure`
//! result. All `clk` pins share one net, which must be a top-level input.

use super::builtins::GateKind;
use super::netlist::{Endpoint, Netlist};
use crate::diagnostic::Diagnostic;
use crate::frontend::ast::{PortMode, TypeMark};

pub fn check_signals(netlist: &Netlist) -> Vec<Diagnostic> {
    let conn = netlist.connectivity();
    let mut diags = Vec::new();
    let is_clk_pin = |ep: &Endpoint| match *ep {
        Endpoint::Pin { gate, port } => netlist.gates[gate].gate.ports[port].name == "clk",
        Endpoint::TopPort(_) => false,
    };

    for net in netlist.cnets() {
        let drivers = &conn.drivers[net.id];
        let sinks = &conn.sinks[net.id];
        if drivers.len() > 1 {
            let names: Vec<_> = drivers.iter().map(|&e| netlist.describe(e)).collect();
            diags.push(Diagnostic::error(
                Some(net.span.clone()),
                format!("bit signal `{}` has multiple drivers: {}", net.name, names.join(", ")),
            ));
            continue;
        }
        if drivers.is_empty() && !sinks.is_empty() {
            diags.push(Diagnostic::error(
                Some(net.span.clone()),
                format!("bit signal `{}` is read but never driven", net.name),
            ));
            continue;
        }
        let from_input = matches!(drivers.first(), Some(Endpoint::TopPort(_)));
        for sink in sinks {
            if let Endpoint::TopPort(i) = *sink {
                if from_input {
                    diags.push(Diagnostic::error(
                        Some(netlist.top_ports[i].decl.span.clone()),
                        format!(
                            "output port `{}` must be driven by a qmeasure result",
                            netlist.top_ports[i].decl.name.name
                        ),
                    ));
                }
            }
        }
    }

    let mut clock_nets: Vec<usize> = netlist
        .gates
        .iter()
        .filter(|g| g.gate.is_clocked())
        .filter_map(|g| g.pin("clk"))
        .collect();
    clock_nets.sort_unstable();
    clock_nets.dedup();
    if clock_nets.len() > 1 {
        let names: Vec<_> = clock_nets.iter().map(|&n| format!("`{}`", netlist.nets[n].name)).collect();
        diags.push(Diagnostic::error(
            Some(netlist.nets[clock_nets[1]].span.clone()),
            format!(
                "qset/qmeasure clocks must all connect to one top-level input; found {}",
                names.join(", ")
            ),
        ));
    } else if let Some(&clk) = clock_nets.first() {
        let net = &netlist.nets[clk];
        if !matches!(conn.drivers[clk].as_slice(), [Endpoint::TopPort(_)]) {
            diags.push(Diagnostic::error(
                Some(net.span.clone()),
                format!("clock `{}` must be a top-level input port", net.name),
            ));
        } else if conn.sinks[clk].iter().any(|s| !is_clk_pin(s)) {
            diags.push(Diagnostic::error(
                Some(net.span.clone()),
                format!("clock `{}` may only connect to clk pins", net.name),
            ));
        }
    }
    diags
}

/// The top-level input port feeding every `clk` pin, if any gate is clocked.
pub(crate) fn clock_port(netlist: &Netlist) -> Option<usize> {
    let net = netlist
        .gates
        .iter()
        .find(|g| matches!(g.gate.kind, GateKind::Setup | GateKind::Measure))
        .and_then(|g| g.pin("clk"))?;
    netlist
        .top_ports
        .iter()
        .position(|p| p.net == net && p.decl.mode == PortMode::In && p.decl.type_mark == TypeMark::Bit)
}

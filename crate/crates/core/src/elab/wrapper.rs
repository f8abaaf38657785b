//! VHDL wrapper emission.
//!
//! The wrapper exposes the top-level bit ports of the quantum circuit to a
//! classical VHDL model. Its architecture body is a stub naming the netlist
//! hash; the simulator binds to it by that hash.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::netlist::Netlist;
use crate::frontend::ast::{EntityDecl, TypeMark};

/// First 16 hex digits of the SHA-256 of the netlist's canonical text.
pub fn netlist_hash(netlist: &Netlist) -> String {
    let digest = Sha256::digest(netlist.canonical_text().as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn emit_vhdl_wrapper(netlist: &Netlist, top: &EntityDecl) -> String {
    let hash = netlist_hash(netlist);
    let name = &top.name.name;
    let ports: Vec<_> = top
        .ports
        .iter()
        .filter(|p| p.type_mark == TypeMark::Bit)
        .collect();

    let mut out = String::new();
    let _ = writeln!(out, "-- VHDL wrapper for QHDL entity {name}.");
    let _ = writeln!(out, "-- Generated by qhdl; do not edit.");
    let _ = writeln!(out, "-- netlist {hash}");
    out.push('\n');
    let _ = writeln!(out, "entity {name} is");
    if !ports.is_empty() {
        out.push_str("  port (\n");
        for (i, p) in ports.iter().enumerate() {
            let sep = if i + 1 == ports.len() { "" } else { ";" };
            let _ = writeln!(out, "    {}: {} bit{sep}", p.name.name, p.mode.as_str());
        }
        out.push_str("    );\n");
    }
    let _ = writeln!(out, "end entity {name};");
    out.push('\n');
    let _ = writeln!(out, "architecture qsim of {name} is");
    out.push_str("begin\n");
    let _ = writeln!(out, "  -- foreign: qsim netlist {hash}");
    let _ = writeln!(out, "end architecture qsim;");
    out
}

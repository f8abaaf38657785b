//! Random well-formed circuits for property tests.
#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use qhdl_core::elab::UnitaryKind;

#[derive(Clone, Debug)]
pub struct Circuit {
    pub n: usize,
    /// Unitaries in dataflow order: kind and operand wires (controls first).
    pub gates: Vec<(UnitaryKind, Vec<usize>)>,
}

#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub positional: bool,
    pub upper: bool,
    /// Route qnot gates through a user entity.
    pub hierarchy: bool,
}

fn kind_of(i: u8) -> UnitaryKind {
    UnitaryKind::ALL[i as usize % UnitaryKind::ALL.len()]
}

/// Deterministic shuffle of `0..n` from `seed`, so proptest can shrink the seed.
fn pick(n: usize, k: usize, mut seed: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        v.swap(i, (seed >> 33) as usize % (i + 1));
    }
    v.truncate(k);
    v
}

pub fn circuit(max_n: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_n, prop::collection::vec((any::<u8>(), any::<u64>()), 0..=max_gates)).prop_map(|(n, raw)| {
        let gates = raw
            .into_iter()
            .map(|(k, seed)| (kind_of(k), seed))
            .filter(|(k, _)| k.arity() <= n)
            .map(|(k, seed)| (k, pick(n, k.arity(), seed)))
            .collect();
        Circuit { n, gates }
    })
}

pub fn style() -> impl Strategy<Value = Style> {
    (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(positional, upper, hierarchy)| Style {
        positional,
        upper,
        hierarchy,
    })
}

/// One instance per line, in circuit order: setups, unitaries, measures.
pub struct Instances {
    pub lines: Vec<String>,
    pub signals: Vec<String>,
}

fn ports(kind: UnitaryKind) -> (&'static str, &'static [&'static str]) {
    match kind {
        UnitaryKind::Not => ("qnot", &["d", "q"]),
        UnitaryKind::Hadamard => ("qhadamard", &["d", "q"]),
        UnitaryKind::Cnot => ("qcnot", &["c_in", "c_out", "d", "q"]),
        UnitaryKind::Toffoli => ("qtoffoli", &["c0_in", "c1_in", "c0_out", "c1_out", "d", "q"]),
        UnitaryKind::Fredkin => ("qfredkin", &["c_in", "c_out", "a_in", "b_in", "a_out", "b_out"]),
    }
}

fn map(formals: &[&str], actuals: &[String], positional: bool) -> String {
    let parts: Vec<String> = formals
        .iter()
        .zip(actuals)
        .map(|(f, a)| if positional { a.clone() } else { format!("{f} => {a}") })
        .collect();
    parts.join(", ")
}

impl Circuit {
    pub fn instances(&self, style: Style) -> Instances {
        let mut cur: Vec<String> = (0..self.n).map(|w| format!("w{w}_0")).collect();
        let mut signals: Vec<String> = (0..self.n).flat_map(|w| [format!("w{w}_0"), format!("w{w}_fb")]).collect();
        let mut lines = Vec::new();
        for w in 0..self.n {
            let a = [
                "clk".to_string(),
                format!("w{w}_fb"),
                format!("w{w}_0"),
                format!("s{w}"),
            ];
            lines.push(format!(
                "set{w}: qset port map ({});",
                map(&["clk", "d", "q", "set"], &a, style.positional)
            ));
        }
        for (i, (kind, wires)) in self.gates.iter().enumerate() {
            let outs: Vec<String> = wires.iter().map(|w| format!("w{w}_g{i}")).collect();
            signals.extend(outs.iter().cloned());
            let (name, formals) = ports(*kind);
            let actuals: Vec<String> = match kind {
                UnitaryKind::Not | UnitaryKind::Hadamard => vec![cur[wires[0]].clone(), outs[0].clone()],
                UnitaryKind::Cnot => vec![cur[wires[0]].clone(), outs[0].clone(), cur[wires[1]].clone(), outs[1].clone()],
                UnitaryKind::Toffoli => vec![
                    cur[wires[0]].clone(),
                    cur[wires[1]].clone(),
                    outs[0].clone(),
                    outs[1].clone(),
                    cur[wires[2]].clone(),
                    outs[2].clone(),
                ],
                UnitaryKind::Fredkin => vec![
                    cur[wires[0]].clone(),
                    outs[0].clone(),
                    cur[wires[1]].clone(),
                    cur[wires[2]].clone(),
                    outs[1].clone(),
                    outs[2].clone(),
                ],
            };
            let component = if style.hierarchy && *kind == UnitaryKind::Not {
                "inv"
            } else {
                name
            };
            lines.push(format!("g{i}: {component} port map ({});", map(formals, &actuals, style.positional)));
            for (w, o) in wires.iter().zip(outs) {
                cur[*w] = o;
            }
        }
        for w in 0..self.n {
            let a = [
                "clk".to_string(),
                cur[w].clone(),
                format!("w{w}_fb"),
                format!("r{w}"),
            ];
            lines.push(format!(
                "meas{w}: qmeasure port map ({});",
                map(&["clk", "d", "q", "result"], &a, style.positional)
            ));
        }
        Instances { lines, signals }
    }

    /// Full source; `order` permutes instance lines.
    pub fn source(&self, style: Style, order: Option<&[usize]>) -> String {
        let inst = self.instances(style);
        let lines: Vec<&String> = match order {
            Some(o) => o.iter().map(|&i| &inst.lines[i]).collect(),
            None => inst.lines.iter().collect(),
        };
        let ins: Vec<String> = (0..self.n).map(|w| format!("s{w}")).collect();
        let outs: Vec<String> = (0..self.n).map(|w| format!("r{w}")).collect();
        let mut src = String::from("library qhdl;\nuse qhdl.std.all;\n\n");
        if style.hierarchy {
            src.push_str(
                "entity inv is port (d: in qbit; q: out qbit); end entity inv;\n\
                 architecture a of inv is begin x: qnot port map (d => d, q => q); end architecture a;\n\n",
            );
        }
        src.push_str(&format!(
            "-- generated\nentity top is\n  port (clk, {}: in bit; {}: out bit);\nend entity top;\n\n",
            ins.join(", "),
            outs.join(", ")
        ));
        src.push_str(&format!(
            "architecture quantum of top is\n  signal {}: qbit;\nbegin\n",
            inst.signals.join(", ")
        ));
        for l in lines {
            src.push_str("  ");
            src.push_str(l);
            src.push('\n');
        }
        src.push_str("end architecture quantum;\n");
        if style.upper {
            src = src.to_uppercase();
        }
        src
    }

    pub fn instance_count(&self) -> usize {
        2 * self.n + self.gates.len()
    }
}

//! Source files in, schedulable netlist out.

use std::collections::HashSet;

use crate::diagnostic::Diagnostic;
use crate::elab::{
    bind_and_flatten, builtins, check_qbit_rules, check_signals, infer_qubit_wires, schedule,
    Netlist, QubitWireAssignment, Schedule, DEFAULT_QUBIT_LIMIT,
};
use crate::frontend::ast::{DesignFile, EntityDecl};
use crate::frontend::parse_source;

#[derive(Clone, Debug)]
pub struct SourceFile {
    pub name: String,
    pub text: String,
}

impl SourceFile {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        SourceFile {
            name: name.into(),
            text: text.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompileOptions {
    /// Top-level entity. When `None`, the one entity that no architecture
    /// instantiates is used.
    pub top: Option<String>,
    pub qubit_limit: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            top: None,
            qubit_limit: DEFAULT_QUBIT_LIMIT,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub design: DesignFile,
    pub top: EntityDecl,
    pub netlist: Netlist,
    pub wires: QubitWireAssignment,
    pub schedule: Schedule,
}

impl Compiled {
    pub fn qnet_count(&self) -> usize {
        self.netlist.qnets().count()
    }

    pub fn cnet_count(&self) -> usize {
        self.netlist.cnets().count()
    }

    /// `gates=6 qubits=2 steps=6 qnets=7 cnets=5` for the Bell design.
    pub fn summary(&self) -> String {
        format!(
            "gates={} qubits={} steps={} qnets={} cnets={}",
            self.netlist.gates.len(),
            self.wires.n,
            self.schedule.steps_total(),
            self.qnet_count(),
            self.cnet_count()
        )
    }
}

/// Parses every source, resolves entities across all of them and
/// elaborates the top entity. Any diagnostic is fatal.
pub fn compile(sources: &[SourceFile], options: &CompileOptions) -> Result<Compiled, Vec<Diagnostic>> {
    let mut design = DesignFile::default();
    for src in sources {
        let file = parse_source(&src.name, &src.text).map_err(|e| vec![e.to_diagnostic()])?;
        design.merge(file);
    }

    let top_name = match &options.top {
        Some(t) => t.to_ascii_lowercase(),
        None => infer_top(&design)?,
    };
    let netlist = bind_and_flatten(&design, &top_name).map_err(|e| vec![e.to_diagnostic()])?;
    let top = design
        .entity(&top_name)
        .cloned()
        .expect("flattening succeeded so the top entity exists");

    let mut diags = check_qbit_rules(&netlist, &top, &design);
    diags.extend(check_signals(&netlist));
    if !diags.is_empty() {
        return Err(diags);
    }

    let wires = infer_qubit_wires(&netlist, options.qubit_limit).map_err(|e| vec![e.to_diagnostic()])?;
    let schedule = schedule(&netlist).map_err(|e| vec![e.to_diagnostic()])?;
    Ok(Compiled {
        design,
        top,
        netlist,
        wires,
        schedule,
    })
}

fn infer_top(design: &DesignFile) -> Result<String, Vec<Diagnostic>> {
    let used: HashSet<&str> = design
        .architectures
        .iter()
        .flat_map(|a| &a.instances)
        .map(|i| i.component_name.name.as_str())
        .filter(|n| builtins::lookup(n).is_none())
        .collect();
    let roots: Vec<&str> = design
        .entities
        .iter()
        .map(|e| e.name.name.as_str())
        .filter(|n| !used.contains(n))
        .collect();
    match roots.as_slice() {
        [one] => Ok(one.to_string()),
        [] => Err(vec![Diagnostic::error(None, "no top-level entity found; use --top")]),
        many => Err(vec![Diagnostic::error(
            None,
            format!("several candidate top-level entities ({}); use --top", many.join(", ")),
        )]),
    }
}

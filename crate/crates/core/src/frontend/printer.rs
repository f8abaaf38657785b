//! Canonical pretty-printer. Output re-parses to the same tree (modulo
//! spans), with units grouped as context clauses, entities, architectures.

use std::fmt::Write;

use super::ast::*;

pub fn print(design: &DesignFile) -> String {
    let mut out = String::new();
    for clause in &design.context_clauses {
        match clause {
            ContextClause::Library { names, .. } => {
                let _ = writeln!(out, "library {};", join(names));
            }
            ContextClause::Use { path, .. } => {
                let parts: Vec<&str> = path.iter().map(|p| p.name.as_str()).collect();
                let _ = writeln!(out, "use {};", parts.join("."));
            }
        }
    }
    for entity in &design.entities {
        out.push('\n');
        print_entity(&mut out, entity);
    }
    for arch in &design.architectures {
        out.push('\n');
        print_architecture(&mut out, arch);
    }
    out
}

fn join(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn print_entity(out: &mut String, entity: &EntityDecl) {
    let _ = writeln!(out, "entity {} is", entity.name);
    if !entity.ports.is_empty() {
        out.push_str("  port (\n");
        for (i, p) in entity.ports.iter().enumerate() {
            let sep = if i + 1 == entity.ports.len() { "" } else { ";" };
            let _ = writeln!(
                out,
                "    {}: {} {}{}",
                p.name,
                p.mode.as_str(),
                p.type_mark.as_str(),
                sep
            );
        }
        out.push_str("  );\n");
    }
    let _ = writeln!(out, "end entity {};", entity.name);
}

fn print_architecture(out: &mut String, arch: &ArchitectureBody) {
    let _ = writeln!(out, "architecture {} of {} is", arch.name, arch.entity_name);
    for s in &arch.signal_decls {
        let _ = writeln!(out, "  signal {}: {};", s.name, s.type_mark.as_str());
    }
    for c in arch
        .classical
        .iter()
        .filter(|c| c.kind == ClassicalKind::ComponentDeclaration)
    {
        let name = c.label.as_ref().map_or("anonymous", |l| l.name.as_str());
        let _ = writeln!(out, "  component {name} is end component {name};");
    }
    out.push_str("begin\n");
    for inst in &arch.instances {
        let assocs: Vec<String> = inst
            .port_map
            .iter()
            .map(|a| match &a.formal {
                Some(f) => format!("{} => {}", f, a.actual),
                None => a.actual.name.clone(),
            })
            .collect();
        let _ = writeln!(
            out,
            "  {}: {} port map ({});",
            inst.label,
            inst.component_name,
            assocs.join(", ")
        );
    }
    for c in &arch.classical {
        let label = c.label.as_ref().map(|l| format!("{}: ", l.name)).unwrap_or_default();
        match c.kind {
            ClassicalKind::ComponentDeclaration => {}
            ClassicalKind::Process => {
                let _ = writeln!(out, "  {label}process is begin wait; end process;");
            }
            ClassicalKind::ConcurrentAssignment => {
                let _ = writeln!(out, "  {label}unused <= '0';");
            }
        }
    }
    let _ = writeln!(out, "end architecture {};", arch.name);
}

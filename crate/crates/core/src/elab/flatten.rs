use std::collections::{HashMap, HashSet};

use super::builtins::{self, BuiltinGate};
use super::netlist::{GateInstance, Net, NetId, Netlist, TopPort};
use super::ElabError;
use crate::frontend::ast::{
    ArchitectureBody, ComponentInstance, DesignFile, EntityDecl, PortMode, TypeMark,
};
use crate::frontend::SourceSpan;

/// Binds every component instance reachable from `top` and inlines the
/// hierarchy into a netlist of built-in gates.
///
/// Built-ins from `qhdl.std` take precedence over design entities of the
/// same name. Ports of a sub-entity alias the nets of their actuals, so a
/// point-to-point connection through any number of hierarchy levels is a
/// single net.
pub fn bind_and_flatten(design: &DesignFile, top: &str) -> Result<Netlist, ElabError> {
    check_declarations(design)?;
    let entity = design.entity(top).ok_or_else(|| ElabError::UnknownEntity {
        name: top.to_string(),
        span: None,
    })?;
    let arch = architecture_of(design, entity)?;

    let mut flat = Flattener {
        design,
        netlist: Netlist {
            top: entity.name.name.clone(),
            gates: Vec::new(),
            nets: Vec::new(),
            top_ports: Vec::new(),
        },
        stack: vec![entity.name.name.clone()],
    };
    let mut port_nets = Vec::with_capacity(entity.ports.len());
    for p in &entity.ports {
        let net = flat.new_net(p.name.name.clone(), p.type_mark, p.span.clone());
        flat.netlist.top_ports.push(TopPort {
            decl: p.clone(),
            net,
        });
        port_nets.push(net);
    }
    flat.elaborate(entity, arch, &port_nets, "")?;
    Ok(flat.netlist)
}

fn architecture_of<'d>(design: &'d DesignFile, entity: &EntityDecl) -> Result<&'d ArchitectureBody, ElabError> {
    let mut archs = design.architectures_of(&entity.name.name).into_iter();
    let first = archs.next().ok_or_else(|| ElabError::MissingArchitecture {
        entity: entity.name.name.clone(),
        span: entity.name.span.clone(),
    })?;
    if let Some(second) = archs.next() {
        return Err(ElabError::MultipleArchitectures {
            entity: entity.name.name.clone(),
            span: second.name.span.clone(),
        });
    }
    Ok(first)
}

fn check_declarations(design: &DesignFile) -> Result<(), ElabError> {
    let mut seen = HashSet::new();
    for e in &design.entities {
        if !seen.insert(e.name.name.as_str()) {
            return Err(dup(&e.name.name, &e.name.span));
        }
        let mut ports = HashSet::new();
        for p in &e.ports {
            if !ports.insert(p.name.name.as_str()) {
                return Err(dup(&p.name.name, &p.name.span));
            }
        }
    }
    for a in &design.architectures {
        let Some(entity) = design.entity(&a.entity_name.name) else {
            return Err(ElabError::UnknownEntity {
                name: a.entity_name.name.clone(),
                span: Some(a.entity_name.span.clone()),
            });
        };
        let mut names: HashSet<&str> = entity.ports.iter().map(|p| p.name.name.as_str()).collect();
        for s in &a.signal_decls {
            if !names.insert(s.name.name.as_str()) {
                return Err(dup(&s.name.name, &s.name.span));
            }
        }
        let mut labels = HashSet::new();
        for i in &a.instances {
            if !labels.insert(i.label.name.as_str()) {
                return Err(dup(&i.label.name, &i.label.span));
            }
        }
    }
    Ok(())
}

fn dup(name: &str, span: &SourceSpan) -> ElabError {
    ElabError::DuplicateDeclaration {
        name: name.to_string(),
        span: span.clone(),
    }
}

struct Flattener<'d> {
    design: &'d DesignFile,
    netlist: Netlist,
    stack: Vec<String>,
}

/// What an instance binds to.
enum Target<'d> {
    Builtin(&'static BuiltinGate),
    Entity(&'d EntityDecl),
}

impl Target<'_> {
    fn port_count(&self) -> usize {
        match self {
            Target::Builtin(g) => g.ports.len(),
            Target::Entity(e) => e.ports.len(),
        }
    }

    fn port(&self, i: usize) -> (&str, PortMode, TypeMark) {
        match self {
            Target::Builtin(g) => (g.ports[i].name, g.ports[i].mode, g.ports[i].type_mark),
            Target::Entity(e) => {
                let p = &e.ports[i];
                (p.name.name.as_str(), p.mode, p.type_mark)
            }
        }
    }

    fn port_index(&self, name: &str) -> Option<usize> {
        (0..self.port_count()).find(|&i| self.port(i).0 == name)
    }
}

/// A name visible inside an architecture.
#[derive(Clone, Copy)]
struct Binding {
    net: NetId,
    /// `Some(mode)` when the name is a port of the enclosing entity.
    port_mode: Option<PortMode>,
    type_mark: TypeMark,
}

impl<'d> Flattener<'d> {
    fn new_net(&mut self, name: String, type_mark: TypeMark, span: SourceSpan) -> NetId {
        let id = self.netlist.nets.len();
        self.netlist.nets.push(Net {
            id,
            name,
            type_mark,
            span,
        });
        id
    }

    fn elaborate(
        &mut self,
        entity: &'d EntityDecl,
        arch: &'d ArchitectureBody,
        port_nets: &[NetId],
        prefix: &str,
    ) -> Result<(), ElabError> {
        let mut scope: HashMap<&str, Binding> = HashMap::new();
        for (p, &net) in entity.ports.iter().zip(port_nets) {
            scope.insert(
                &p.name.name,
                Binding {
                    net,
                    port_mode: Some(p.mode),
                    type_mark: p.type_mark,
                },
            );
        }
        for s in &arch.signal_decls {
            let net = self.new_net(format!("{prefix}{}", s.name.name), s.type_mark, s.name.span.clone());
            scope.insert(
                &s.name.name,
                Binding {
                    net,
                    port_mode: None,
                    type_mark: s.type_mark,
                },
            );
        }

        for inst in &arch.instances {
            let target = self.resolve(inst)?;
            let pins = self.bind_ports(inst, &target, &scope)?;
            let path = format!("{prefix}{}", inst.label.name);
            match target {
                Target::Builtin(gate) => self.netlist.gates.push(GateInstance {
                    path,
                    gate,
                    pins,
                    span: inst.span.clone(),
                }),
                Target::Entity(sub) => {
                    if let Some(pos) = self.stack.iter().position(|n| *n == sub.name.name) {
                        let mut cycle = self.stack[pos..].to_vec();
                        cycle.push(sub.name.name.clone());
                        return Err(ElabError::RecursiveInstantiation {
                            cycle,
                            span: inst.component_name.span.clone(),
                        });
                    }
                    let sub_arch = architecture_of(self.design, sub)?;
                    self.stack.push(sub.name.name.clone());
                    self.elaborate(sub, sub_arch, &pins, &format!("{path}."))?;
                    self.stack.pop();
                }
            }
        }
        Ok(())
    }

    fn resolve(&self, inst: &ComponentInstance) -> Result<Target<'d>, ElabError> {
        let name = &inst.component_name.name;
        if let Some(g) = builtins::lookup(name) {
            return Ok(Target::Builtin(g));
        }
        if let Some(e) = self.design.entity(name) {
            return Ok(Target::Entity(e));
        }
        Err(ElabError::UnknownComponent {
            label: inst.label.name.clone(),
            component: name.clone(),
            span: inst.component_name.span.clone(),
        })
    }

    /// Maps every formal port of `target` to a net, checking that each is
    /// associated exactly once with an actual of matching type and a
    /// compatible direction.
    fn bind_ports(
        &self,
        inst: &ComponentInstance,
        target: &Target<'_>,
        scope: &HashMap<&str, Binding>,
    ) -> Result<Vec<NetId>, ElabError> {
        let mismatch = |formal: &str, reason: String, span: &SourceSpan| ElabError::PortMapMismatch {
            label: inst.label.name.clone(),
            formal: formal.to_string(),
            reason,
            span: span.clone(),
        };

        let mut pins: Vec<Option<NetId>> = vec![None; target.port_count()];
        for (pos, assoc) in inst.port_map.iter().enumerate() {
            let index = match &assoc.formal {
                Some(f) => target
                    .port_index(&f.name)
                    .ok_or_else(|| mismatch(&f.name, "no such port".into(), &f.span))?,
                None if pos < target.port_count() => pos,
                None => {
                    return Err(mismatch(
                        &assoc.actual.name,
                        format!("too many positional associations (component has {} ports)", target.port_count()),
                        &assoc.span,
                    ))
                }
            };
            let (formal, mode, type_mark) = target.port(index);
            if pins[index].is_some() {
                return Err(mismatch(formal, "associated more than once".into(), &assoc.span));
            }
            let binding = scope.get(assoc.actual.name.as_str()).ok_or_else(|| ElabError::UnknownSignal {
                name: assoc.actual.name.clone(),
                span: assoc.actual.span.clone(),
            })?;
            if binding.type_mark != type_mark {
                return Err(mismatch(
                    formal,
                    format!(
                        "type mismatch: port is {}, `{}` is {}",
                        type_mark.as_str(),
                        assoc.actual.name,
                        binding.type_mark.as_str()
                    ),
                    &assoc.span,
                ));
            }
            if mode == PortMode::Out && binding.port_mode == Some(PortMode::In) {
                return Err(mismatch(
                    formal,
                    format!("output cannot drive input port `{}`", assoc.actual.name),
                    &assoc.span,
                ));
            }
            pins[index] = Some(binding.net);
        }
        pins.into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| mismatch(target.port(i).0, "port is not connected".into(), &inst.span)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;
    use crate::samples::BELLSTATE;

    fn flatten(src: &str, top: &str) -> Result<Netlist, ElabError> {
        bind_and_flatten(&parse_source("t.qhdl", src).unwrap(), top)
    }

    #[test]
    fn bell_netlist_shape() {
        let n = flatten(BELLSTATE, "bellstate").unwrap();
        assert_eq!(n.gates.len(), 6);
        assert_eq!(n.qnets().count(), 7);
        assert_eq!(n.cnets().count(), 5);
        assert_eq!(n.top_ports.len(), 5);
        let g = &n.gates[3];
        assert_eq!(g.path, "entangle");
        assert_eq!(n.nets[g.pin("c_in").unwrap()].name, "had_a");
    }

    const HIER: &str = "
        library qhdl; use qhdl.std.all;
        entity e1 is port (d: in qbit; q: out qbit); end;
        architecture a of e1 is begin g1: qnot port map (d => d, q => q); end;
        entity e2 is port (clk, s: in bit; r: out bit); end;
        architecture a of e2 is
          signal x, y, z: qbit;
        begin
          set: qset port map (clk, z, x, s);
          u1: e1 port map (d => x, q => y);
          m: qmeasure port map (clk => clk, d => y, q => z, result => r);
        end;";

    #[test]
    fn one_level_hierarchy() {
        let n = flatten(HIER, "e2").unwrap();
        let paths: Vec<_> = n.gates.iter().map(|g| g.path.as_str()).collect();
        assert_eq!(paths, ["set", "u1.g1", "m"]);
        // u1's ports alias x and y; no extra nets for them.
        assert_eq!(n.qnets().count(), 3);
        assert_eq!(n.gates[1].pin("d"), n.gates[0].pin("q"));
        assert_eq!(n.gates[1].pin("q"), n.gates[2].pin("d"));
    }

    #[test]
    fn unknown_component() {
        let err = flatten(
            "entity t is end; architecture a of t is signal x: qbit; begin u: qfoo port map (x); end;",
            "t",
        )
        .unwrap_err();
        assert!(matches!(err, ElabError::UnknownComponent { ref component, .. } if component == "qfoo"));
    }

    #[test]
    fn missing_and_multiple_architectures() {
        assert!(matches!(flatten("entity t is end;", "t"), Err(ElabError::MissingArchitecture { .. })));
        assert!(matches!(
            flatten("entity t is end; architecture a of t is begin end; architecture b of t is begin end;", "t"),
            Err(ElabError::MultipleArchitectures { .. })
        ));
        assert!(matches!(flatten("entity t is end;", "nope"), Err(ElabError::UnknownEntity { .. })));
    }

    #[test]
    fn port_map_mismatches() {
        let base = |body: &str| {
            format!(
                "entity t is port (clk: in bit; o: out bit); end;
                 architecture a of t is signal x, y: qbit; signal b: bit; begin {body} end;"
            )
        };
        let cases = [
            "g: qnot port map (d => x);",
            "g: qnot port map (d => x, q => y, q => x);",
            "g: qnot port map (d => x, z => y);",
            "g: qnot port map (d => b, q => y);",
            "g: qnot port map (x, y, x);",
            "g: qmeasure port map (clk => clk, d => x, q => y, result => clk);",
        ];
        for body in cases {
            let err = flatten(&base(body), "t").unwrap_err();
            assert!(matches!(err, ElabError::PortMapMismatch { .. }), "{body}: {err:?}");
        }
        let err = flatten(&base("g: qnot port map (d => nope, q => y);"), "t").unwrap_err();
        assert!(matches!(err, ElabError::UnknownSignal { .. }));
    }

    #[test]
    fn recursion_is_detected() {
        let src = "
            entity a is port (d: in qbit; q: out qbit); end;
            architecture x of a is begin u: b port map (d, q); end;
            entity b is port (d: in qbit; q: out qbit); end;
            architecture x of b is begin u: a port map (d, q); end;";
        let err = flatten(src, "a").unwrap_err();
        match err {
            ElabError::RecursiveInstantiation { cycle, .. } => assert_eq!(cycle, ["a", "b", "a"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicates_are_rejected() {
        let cases = [
            "entity t is port (x, x: in bit); end;",
            "entity t is end; entity t is end;",
            "entity t is port (x: in bit); end; architecture a of t is signal x: qbit; begin end;",
            "entity t is end; architecture a of t is signal x, y: qbit; begin g: qnot port map (x, y); g: qnot port map (y, x); end;",
        ];
        for src in cases {
            assert!(
                matches!(flatten(src, "t"), Err(ElabError::DuplicateDeclaration { .. })),
                "{src}"
            );
        }
    }

    #[test]
    fn builtins_shadow_entities() {
        let src = "
            entity qnot is port (d: in qbit; q: out qbit); end;
            architecture x of qnot is begin u: qhadamard port map (d, q); end;
            entity t is end;
            architecture a of t is signal x, y: qbit; begin g: qnot port map (x, y); end;";
        let n = flatten(src, "t").unwrap();
        assert_eq!(n.gates[0].gate.name, "qnot");
    }
}

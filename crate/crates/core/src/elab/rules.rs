use std::collections::{BTreeMap, HashSet, VecDeque};

use super::builtins;
use super::netlist::{Endpoint, Netlist};
use super::wires::pass_through_classes;
use crate::diagnostic::{Diagnostic, Rule};
use crate::frontend::ast::{DesignFile, EntityDecl, TypeMark};

/// Checks the three QHDL rules. An empty result means the design is legal.
///
/// Rule i violations are reported once per qubit wire (a class of nets
/// joined through gate pass-through pins). Drivers and sinks balance within
/// a wire, so a fan-out always comes with a dangling net somewhere on the
/// same wire; both are named in the one diagnostic. Wires that reach a
/// top-level qbit port are left to rule ii.
pub fn check_qbit_rules(netlist: &Netlist, top: &EntityDecl, design: &DesignFile) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    for p in top.ports.iter().filter(|p| p.type_mark == TypeMark::Qbit) {
        diags.push(Diagnostic::rule(
            Rule::NoTopLevelQbitPorts,
            p.span.clone(),
            format!(
                "top-level entity `{}` must not have qbit port `{}`",
                top.name.name, p.name.name
            ),
        ));
    }

    diags.extend(single_driver_single_sink(netlist));

    for arch in reachable_architectures(design, &top.name.name) {
        for c in &arch.classical {
            let what = match &c.label {
                Some(l) => format!("{} `{}`", c.kind.describe(), l.name),
                None => c.kind.describe().to_string(),
            };
            diags.push(Diagnostic::rule(
                Rule::NoClassicalLogic,
                c.span.clone(),
                format!(
                    "architecture `{}` of `{}` contains {what}; QHDL architectures may only instantiate components",
                    arch.name.name, arch.entity_name.name
                ),
            ));
        }
    }
    diags
}

fn single_driver_single_sink(netlist: &Netlist) -> Vec<Diagnostic> {
    let conn = netlist.connectivity();
    let mut uf = pass_through_classes(netlist);

    let boundary: HashSet<usize> = netlist
        .top_ports
        .iter()
        .filter(|p| p.decl.type_mark == TypeMark::Qbit)
        .map(|p| uf.find(p.net))
        .collect();

    // wire root -> (first offending net, problems)
    let mut problems: BTreeMap<usize, (usize, Vec<String>)> = BTreeMap::new();
    for net in netlist.qnets() {
        let root = uf.find(net.id);
        if boundary.contains(&root) {
            continue;
        }
        let list = |eps: &[Endpoint]| {
            eps.iter()
                .map(|&e| netlist.describe(e))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let drivers = &conn.drivers[net.id];
        let sinks = &conn.sinks[net.id];
        let mut issues = Vec::new();
        match drivers.len() {
            0 => issues.push("has no driver".to_string()),
            1 => {}
            _ => issues.push(format!("is driven by {} (multiple drivers)", list(drivers))),
        }
        match sinks.len() {
            0 => issues.push("feeds no input".to_string()),
            1 => {}
            _ => issues.push(format!("feeds {} (multiple sinks)", list(sinks))),
        }
        if issues.is_empty() {
            continue;
        }
        let entry = problems.entry(root).or_insert((net.id, Vec::new()));
        entry
            .1
            .push(format!("qbit signal `{}` {}", net.name, issues.join(" and ")));
    }

    let mut groups: Vec<_> = problems.into_values().collect();
    groups.sort_by_key(|(first, _)| *first);
    groups
        .into_iter()
        .map(|(first, msgs)| {
            Diagnostic::rule(
                Rule::SingleDriverSingleSink,
                netlist.nets[first].span.clone(),
                format!(
                    "{}; a qbit signal needs exactly one driver and one sink",
                    msgs.join("; ")
                ),
            )
        })
        .collect()
}

fn reachable_architectures<'d>(
    design: &'d DesignFile,
    top: &str,
) -> Vec<&'d crate::frontend::ast::ArchitectureBody> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([top.to_string()]);
    let mut out = Vec::new();
    while let Some(name) = queue.pop_front() {
        if !seen.insert(name.clone()) {
            continue;
        }
        for arch in design.architectures_of(&name) {
            out.push(arch);
            for inst in &arch.instances {
                let comp = &inst.component_name.name;
                if builtins::lookup(comp).is_none() && design.entity(comp).is_some() {
                    queue.push_back(comp.clone());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elab::bind_and_flatten;
    use crate::frontend::parse_source;
    use crate::samples::BELLSTATE;

    fn check(src: &str, top: &str) -> Vec<Diagnostic> {
        let design = parse_source("t.qhdl", src).unwrap();
        let netlist = bind_and_flatten(&design, top).unwrap();
        check_qbit_rules(&netlist, design.entity(top).unwrap(), &design)
    }

    #[test]
    fn bell_is_clean() {
        assert!(check(BELLSTATE, "bellstate").is_empty());
    }

    #[test]
    fn fan_out_is_one_rule_i_diagnostic() {
        let src = "
            entity t is port (clk, s: in bit; r1, r2: out bit); end;
            architecture a of t is signal x, y, u, fb1, fb2: qbit; begin
              p: qset port map (clk => clk, d => fb1, q => x, set => s);
              g: qnot port map (d => x, q => y);
              h: qhadamard port map (d => x, q => u);
              m1: qmeasure port map (clk => clk, d => y, q => fb1, result => r1);
              m2: qmeasure port map (clk => clk, d => u, q => fb2, result => r2);
            end;";
        let d = check(src, "t");
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].rule, Some(Rule::SingleDriverSingleSink));
        assert!(d[0].message.contains("multiple sinks"));
        assert!(d[0].message.contains("`fb2` feeds no input"));
    }

    #[test]
    fn top_level_qbit_port() {
        let src = BELLSTATE.replace("clk: in bit;", "clk: in bit; x: in qbit;");
        let d = check(&src, "bellstate");
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].rule, Some(Rule::NoTopLevelQbitPorts));
    }

    #[test]
    fn process_in_architecture() {
        let src = BELLSTATE.replace(
            "begin\n",
            "begin\n  tick: process (clk) is begin if clk'event then report \"x\"; end if; end process tick;\n",
        );
        let d = check(&src, "bellstate");
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].rule, Some(Rule::NoClassicalLogic));
        assert!(d[0].message.contains("process statement `tick`"));
    }

    #[test]
    fn classical_logic_in_sub_entity() {
        let src = "
            entity s is port (d: in qbit; q: out qbit); end;
            architecture a of s is signal b: bit; begin g: qnot port map (d, q); b <= b; end;
            entity t is port (clk, i: in bit; r: out bit); end;
            architecture a of t is signal x, y, z: qbit; begin
              p: qset port map (clk, z, x, i);
              u: s port map (x, y);
              m: qmeasure port map (clk, y, z, r);
            end;";
        let d = check(src, "t");
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rule, Some(Rule::NoClassicalLogic));
    }

    #[test]
    fn undriven_and_multiply_driven() {
        let src = "
            entity t is end;
            architecture a of t is signal x, y, w: qbit; begin
              g: qnot port map (d => x, q => y);
              h: qnot port map (d => y, q => x);
              k: qnot port map (d => w, q => y);
            end;";
        let d = check(src, "t");
        assert_eq!(d.len(), 1, "{d:?}");
        assert!(d[0].message.contains("multiple drivers"));
        assert!(d[0].message.contains("`w` has no driver"));
    }
}

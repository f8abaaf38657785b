//! Qubit wire inference.
//!
//! A physical qubit enters every gate on an input pin and leaves on the
//! paired output pin. Joining those pin pairs over all gates partitions the
//! qbit nets into wires; each wire is one qubit of the state vector.

use super::netlist::{NetId, Netlist};
use super::ElabError;
use crate::frontend::ast::TypeMark;

pub const DEFAULT_QUBIT_LIMIT: usize = 24;

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Union-find over all nets joining each gate's pass-through pin pairs.
pub(crate) fn pass_through_classes(netlist: &Netlist) -> UnionFind {
    let mut uf = UnionFind::new(netlist.nets.len());
    for gate in &netlist.gates {
        for &(i, o) in gate.gate.pass_through {
            uf.union(gate.pins[i], gate.pins[o]);
        }
    }
    uf
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitWireAssignment {
    /// Indexed by net id; `None` for bit nets.
    pub wire_of_net: Vec<Option<usize>>,
    pub n: usize,
}

impl QubitWireAssignment {
    pub fn wire(&self, net: NetId) -> usize {
        self.wire_of_net[net].expect("qbit net without a wire")
    }

    /// Nets of each wire, in net id order.
    pub fn members(&self) -> Vec<Vec<NetId>> {
        let mut out = vec![Vec::new(); self.n];
        for (net, w) in self.wire_of_net.iter().enumerate() {
            if let Some(w) = w {
                out[*w].push(net);
            }
        }
        out
    }
}

/// Assigns a qubit index to every qbit net. Indices are handed out in order
/// of first appearance walking the gates in flattened order and their pins
/// in port order; nets not attached to any gate come last.
pub fn infer_qubit_wires(netlist: &Netlist, limit: usize) -> Result<QubitWireAssignment, ElabError> {
    let mut uf = pass_through_classes(netlist);
    let mut index_of_root = vec![None; netlist.nets.len()];
    let mut n = 0;
    let gate_nets = netlist.gates.iter().flat_map(|g| g.pins.iter().copied());
    let all_nets = gate_nets.chain(0..netlist.nets.len());
    for net in all_nets {
        if netlist.nets[net].type_mark != TypeMark::Qbit {
            continue;
        }
        let root = uf.find(net);
        if index_of_root[root].is_none() {
            index_of_root[root] = Some(n);
            n += 1;
        }
    }
    if n > limit {
        return Err(ElabError::QubitLimitExceeded { n, limit });
    }
    let wire_of_net = (0..netlist.nets.len())
        .map(|net| match netlist.nets[net].type_mark {
            TypeMark::Qbit => index_of_root[uf.find(net)],
            TypeMark::Bit => None,
        })
        .collect();
    Ok(QubitWireAssignment { wire_of_net, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elab::bind_and_flatten;
    use crate::frontend::parse_source;
    use crate::samples::BELLSTATE;

    fn netlist(src: &str, top: &str) -> Netlist {
        bind_and_flatten(&parse_source("t.qhdl", src).unwrap(), top).unwrap()
    }

    fn names(n: &Netlist, nets: &[NetId]) -> Vec<String> {
        let mut v: Vec<_> = nets.iter().map(|&i| n.nets[i].name.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(1), uf.find(3));
        assert!(uf.union(1, 4));
        assert_eq!(uf.find(0), uf.find(3));
    }

    #[test]
    fn bell_has_two_wires() {
        let n = netlist(BELLSTATE, "bellstate");
        let w = infer_qubit_wires(&n, DEFAULT_QUBIT_LIMIT).unwrap();
        assert_eq!(w.n, 2);
        let m = w.members();
        assert_eq!(names(&n, &m[0]), ["had_a", "meas_a", "not_a", "reg_a"]);
        assert_eq!(names(&n, &m[1]), ["meas_b", "not_b", "reg_b"]);
    }

    const LOOP1: &str = "
        entity t is port (clk, s: in bit; r: out bit); end;
        architecture a of t is signal x, y, z: qbit; begin
          p: qset port map (clk => clk, d => z, q => x, set => s);
          g: qnot port map (d => x, q => y);
          m: qmeasure port map (clk => clk, d => y, q => z, result => r);
        end;";

    #[test]
    fn single_wire() {
        let w = infer_qubit_wires(&netlist(LOOP1, "t"), 24).unwrap();
        assert_eq!(w.n, 1);
    }

    #[test]
    fn two_disjoint_loops() {
        let src = "
            entity t is port (clk, s: in bit; r1, r2: out bit); end;
            architecture a of t is signal a1, a2, b1, b2: qbit; begin
              p1: qset port map (clk, a2, a1, s);
              m1: qmeasure port map (clk, a1, a2, r1);
              p2: qset port map (clk, b2, b1, s);
              m2: qmeasure port map (clk, b1, b2, r2);
            end;";
        let n = netlist(src, "t");
        let w = infer_qubit_wires(&n, 24).unwrap();
        // Oracle: connected components by repeated relaxation over the
        // four pass-through edges of the hand-built netlist.
        let edges = [("a2", "a1"), ("a1", "a2"), ("b2", "b1"), ("b1", "b2")];
        let qnames: Vec<&str> = n.qnets().map(|q| q.name.as_str()).collect();
        let mut label: Vec<usize> = (0..qnames.len()).collect();
        let idx = |s: &str| qnames.iter().position(|q| *q == s).unwrap();
        loop {
            let mut changed = false;
            for (a, b) in edges {
                let m = label[idx(a)].min(label[idx(b)]);
                for i in [idx(a), idx(b)] {
                    if label[i] != m {
                        label[i] = m;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut distinct = label.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(w.n, distinct.len());
        assert_eq!(w.n, 2);
    }

    #[test]
    fn limit_is_enforced() {
        let err = infer_qubit_wires(&netlist(BELLSTATE, "bellstate"), 1).unwrap_err();
        assert_eq!(err, ElabError::QubitLimitExceeded { n: 2, limit: 1 });
    }
}

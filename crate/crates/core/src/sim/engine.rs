//! The clocked engine.
//!
//! Each cycle starts at a rising clock edge. The engine presents the
//! outputs registered in the previous cycle, samples the inputs, then runs
//! the schedule one operation per delta step. Measurement results latch
//! into the output register at the end of the cycle, so the environment
//! sees them at the following edge.

use std::fmt;

use indexmap::IndexMap;

use super::rng::SimRng;
use super::state::StateVector;
use super::SimError;
use crate::compile::Compiled;
use crate::elab::{Endpoint, GateKind, UnitaryKind};
use crate::frontend::ast::{PortMode, TypeMark};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClockConfig {
    pub first_edge_fs: u64,
    pub period_fs: u64,
}

impl Default for ClockConfig {
    /// 100 MHz with the first rising edge at 5 ns.
    fn default() -> Self {
        ClockConfig {
            first_edge_fs: 5_000_000,
            period_fs: 10_000_000,
        }
    }
}

impl ClockConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.period_fs < 2 {
            return Err(SimError::InvalidClock(self.period_fs));
        }
        Ok(())
    }

    /// Time of the rising edge that starts `cycle`.
    pub fn edge(&self, cycle: u64) -> Result<u64, SimError> {
        cycle
            .checked_mul(self.period_fs)
            .and_then(|t| t.checked_add(self.first_edge_fs))
            .ok_or(SimError::TimeOverflow(cycle))
    }

    pub fn falling(&self, cycle: u64) -> Result<u64, SimError> {
        self.edge(cycle)?
            .checked_add(self.period_fs / 2)
            .ok_or(SimError::TimeOverflow(cycle))
    }
}

/// Femtoseconds plus a delta step within that instant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimTime {
    pub time_fs: u64,
    pub delta_step: u64,
}

impl fmt::Display for SimTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fs step {}", self.time_fs, self.delta_step)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    pub cycle: u64,
    pub edge_time: SimTime,
    /// Data inputs sampled at the edge (the clock is not listed).
    pub inputs: IndexMap<String, u8>,
    /// Result of each measurement executed in this cycle, by gate path.
    pub measured: IndexMap<String, u8>,
    /// Outputs visible at this edge: last cycle's measurements.
    pub outputs_presented: IndexMap<String, u8>,
}

impl CycleRecord {
    /// Presented output bits concatenated in port order, e.g. `"01"`.
    pub fn output_key(&self) -> String {
        self.outputs_presented
            .values()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Where a classical bit comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitSource {
    /// Index into the sampled data inputs.
    Input(usize),
    /// Index into the measurement register (last cycle's result).
    Register(usize),
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Setup { qubit: usize, set: BitSource },
    Unitary { kind: UnitaryKind, qubits: Vec<usize> },
    Measure { qubit: usize, register: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramOp {
    pub label: String,
    pub op: Op,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PortRole {
    Clock,
    Input(usize),
    Output(BitSource),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramPort {
    pub name: String,
    pub role: PortRole,
}

/// A compiled design lowered to what the engine executes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub n: usize,
    pub ops: Vec<ProgramOp>,
    /// Data input names, in port order.
    pub inputs: Vec<String>,
    /// Measurement gate paths, indexed by register.
    pub registers: Vec<String>,
    /// Top-level bit ports in declaration order.
    pub ports: Vec<ProgramPort>,
}

impl Program {
    pub fn new(c: &Compiled) -> Program {
        let netlist = &c.netlist;
        let conn = netlist.connectivity();
        let clock = crate::elab::clock_port(netlist);

        let mut inputs = Vec::new();
        let mut input_of_port = vec![None; netlist.top_ports.len()];
        for (i, p) in netlist.top_ports.iter().enumerate() {
            if p.decl.type_mark == TypeMark::Bit && p.decl.mode == PortMode::In && Some(i) != clock {
                input_of_port[i] = Some(inputs.len());
                inputs.push(p.decl.name.name.clone());
            }
        }

        let mut registers = Vec::new();
        let mut register_of_gate = vec![None; netlist.gates.len()];
        for op in &c.schedule.steps {
            let g = &netlist.gates[op.gate];
            if g.gate.kind == GateKind::Measure {
                register_of_gate[op.gate] = Some(registers.len());
                registers.push(g.path.clone());
            }
        }

        let source = |net: usize| match conn.drivers[net].as_slice() {
            [Endpoint::TopPort(i)] => input_of_port[*i].map_or(BitSource::Zero, BitSource::Input),
            [Endpoint::Pin { gate, .. }] => register_of_gate[*gate].map_or(BitSource::Zero, BitSource::Register),
            _ => BitSource::Zero,
        };
        let wire = |net: usize| c.wires.wire(net);

        let ops = c
            .schedule
            .steps
            .iter()
            .map(|s| {
                let g = &netlist.gates[s.gate];
                let op = match g.gate.kind {
                    GateKind::Setup => Op::Setup {
                        qubit: wire(g.pin("d").expect("qset has d")),
                        set: source(g.pin("set").expect("qset has set")),
                    },
                    GateKind::Measure => Op::Measure {
                        qubit: wire(g.pin("d").expect("qmeasure has d")),
                        register: register_of_gate[s.gate].expect("measure has a register"),
                    },
                    GateKind::Unitary(kind) => Op::Unitary {
                        kind,
                        qubits: g.qubit_inputs().map(wire).collect(),
                    },
                };
                ProgramOp {
                    label: g.path.clone(),
                    op,
                }
            })
            .collect();

        let ports = netlist
            .top_ports
            .iter()
            .enumerate()
            .filter(|(_, p)| p.decl.type_mark == TypeMark::Bit)
            .map(|(i, p)| ProgramPort {
                name: p.decl.name.name.clone(),
                role: if Some(i) == clock {
                    PortRole::Clock
                } else if let Some(k) = input_of_port[i] {
                    PortRole::Input(k)
                } else {
                    PortRole::Output(source(p.net))
                },
            })
            .collect();

        Program {
            n: c.wires.n,
            ops,
            inputs,
            registers,
            ports,
        }
    }

    pub fn steps_total(&self) -> usize {
        self.ops.len()
    }

    pub fn outputs(&self) -> impl Iterator<Item = (&str, BitSource)> {
        self.ports.iter().filter_map(|p| match p.role {
            PortRole::Output(src) => Some((p.name.as_str(), src)),
            _ => None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Engine {
    program: Program,
    clock: ClockConfig,
    state: StateVector,
    rng: SimRng,
    cycle: u64,
    next_step: usize,
    in_cycle: bool,
    inputs: Vec<u8>,
    latched: Vec<u8>,
    registered: Vec<u8>,
}

impl Engine {
    pub fn new(program: Program, clock: ClockConfig, seed: u64, qubit_limit: usize) -> Result<Self, SimError> {
        clock.validate()?;
        let state = StateVector::new(program.n, qubit_limit)?;
        let regs = program.registers.len();
        Ok(Engine {
            inputs: vec![0; program.inputs.len()],
            latched: vec![0; regs],
            registered: vec![0; regs],
            program,
            clock,
            state,
            rng: SimRng::new(seed),
            cycle: 0,
            next_step: 0,
            in_cycle: false,
        })
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn clock(&self) -> ClockConfig {
        self.clock
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Index of the current (or next, between cycles) cycle.
    pub fn cycle(&self) -> u64 {
        self.cycle
    }

    /// Step index of the next operation in the current cycle.
    pub fn next_step(&self) -> usize {
        self.next_step
    }

    pub fn in_cycle(&self) -> bool {
        self.in_cycle
    }

    pub fn edge_time(&self) -> Result<u64, SimError> {
        self.clock.edge(self.cycle)
    }

    fn bit(&self, src: BitSource) -> u8 {
        match src {
            BitSource::Input(i) => self.inputs[i],
            BitSource::Register(r) => self.registered[r],
            BitSource::Zero => 0,
        }
    }

    /// Outputs visible at the current edge.
    pub fn outputs_presented(&self) -> IndexMap<String, u8> {
        self.program
            .outputs()
            .map(|(name, src)| (name.to_string(), self.bit(src)))
            .collect()
    }

    /// Samples `inputs` (one bit per data input, in port order) at the
    /// rising edge of the current cycle.
    pub fn begin_cycle(&mut self, inputs: &[u8]) -> Result<(), SimError> {
        if self.in_cycle {
            return Err(SimError::Sequence("begin_cycle called twice"));
        }
        if inputs.len() != self.program.inputs.len() {
            return Err(SimError::InputCount {
                expected: self.program.inputs.len(),
                got: inputs.len(),
            });
        }
        self.edge_time()?;
        self.inputs = inputs.iter().map(|&b| b & 1).collect();
        self.in_cycle = true;
        self.next_step = 0;
        Ok(())
    }

    /// Executes the next scheduled operation. Returns its time, or `None`
    /// once every operation of the cycle has run.
    pub fn step(&mut self) -> Result<Option<SimTime>, SimError> {
        if !self.in_cycle {
            return Err(SimError::Sequence("step outside a cycle"));
        }
        let Some(op) = self.program.ops.get(self.next_step) else {
            return Ok(None);
        };
        match &op.op {
            Op::Setup { qubit, set } => {
                let value = self.bit(*set);
                self.state.prepare_qubit(*qubit, value, &mut self.rng)?;
            }
            Op::Unitary { kind, qubits } => self.state.apply_unitary(*kind, qubits)?,
            Op::Measure { qubit, register } => {
                self.latched[*register] = self.state.measure_qubit(*qubit, &mut self.rng)?;
            }
        }
        let at = SimTime {
            time_fs: self.edge_time()?,
            delta_step: self.next_step as u64,
        };
        self.next_step += 1;
        Ok(Some(at))
    }

    /// Runs any remaining operations, latches the measurement register and
    /// moves to the next edge.
    pub fn end_cycle(&mut self) -> Result<CycleRecord, SimError> {
        while self.step()?.is_some() {}
        let record = CycleRecord {
            cycle: self.cycle,
            edge_time: SimTime {
                time_fs: self.edge_time()?,
                delta_step: 0,
            },
            inputs: self.program.inputs.iter().cloned().zip(self.inputs.iter().copied()).collect(),
            measured: self
                .program
                .registers
                .iter()
                .cloned()
                .zip(self.latched.iter().copied())
                .collect(),
            outputs_presented: self.outputs_presented(),
        };
        self.registered.clone_from(&self.latched);
        self.cycle += 1;
        self.next_step = 0;
        self.in_cycle = false;
        Ok(record)
    }

    pub fn run_cycle(&mut self, inputs: &[u8]) -> Result<CycleRecord, SimError> {
        self.run_cycle_observed(inputs, |_, _| {})
    }

    /// Like [`Engine::run_cycle`], calling `observe` after every operation.
    pub fn run_cycle_observed(
        &mut self,
        inputs: &[u8],
        mut observe: impl FnMut(SimTime, &StateVector),
    ) -> Result<CycleRecord, SimError> {
        self.begin_cycle(inputs)?;
        while let Some(at) = self.step()? {
            observe(at, &self.state);
        }
        self.end_cycle()
    }
}

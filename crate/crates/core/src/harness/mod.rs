//! The classical environment around a simulation: stimulus in, VCD,
//! state trace, per-cycle log and histogram out.

mod histogram;
mod stimulus;
mod trace;
mod vcd;

pub use histogram::{report_histogram, Histogram};
pub use stimulus::{parse_stimulus, Assignment, Stimulus, StimulusError};
pub use trace::{format_g17, write_state_trace, StateTraceWriter};
pub use vcd::{vcd_id, write_vcd, VcdError, VcdLayout, VcdVar};

use crate::sim::{CycleRecord, Engine, SimError, SimTime, StateVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub records: Vec<CycleRecord>,
    /// Cycles 1 and later.
    pub histogram: Histogram,
    /// Output key presented at cycle 0 (the reset value), if any cycle ran.
    pub reset_key: Option<String>,
}

/// Runs `cycles` clock cycles, taking inputs from `stimulus` and calling
/// `observe` after every scheduled operation.
pub fn run(
    engine: &mut Engine,
    stimulus: &Stimulus,
    cycles: u64,
    mut observe: impl FnMut(SimTime, &StateVector),
) -> Result<RunOutput, SimError> {
    let inputs = engine.program().inputs.clone();
    let mut records = Vec::with_capacity(cycles.min(1 << 20) as usize);
    for _ in 0..cycles {
        let values = stimulus.resolve(engine.cycle(), &inputs);
        records.push(engine.run_cycle_observed(&values, &mut observe)?);
    }
    Ok(RunOutput {
        histogram: Histogram::from_records(&records),
        reset_key: records.first().map(|r| r.output_key()),
        records,
    })
}

/// `cycle 3: a_out=1 b_out=1`
pub fn cycle_log_line(record: &CycleRecord) -> String {
    let mut line = format!("cycle {}:", record.cycle);
    for (name, bit) in &record.outputs_presented {
        line.push_str(&format!(" {name}={bit}"));
    }
    line
}

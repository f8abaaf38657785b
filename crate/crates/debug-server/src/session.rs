//! The stepping session and its wire messages.

use indexmap::IndexMap;
use qhdl_core::harness::Stimulus;
use qhdl_core::sim::{Engine, SimError};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Amplitude {
    pub mag: f64,
    pub phase: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateMessage {
    pub time_fs: u64,
    /// Step index of the operation just executed (0 before the first).
    pub step: u64,
    pub steps_total: u64,
    pub cycle: u64,
    pub amplitudes: Vec<Amplitude>,
    pub outputs: IndexMap<String, u8>,
}

/// Everything the server sends.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ServerMessage {
    State(StateMessage),
    Ended,
    Error { message: String },
}

/// Everything a client may send. Fields other than `type` are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CommandMessage {
    Step,
    Status,
}

impl CommandMessage {
    pub fn decode(text: &str) -> Result<CommandMessage, String> {
        serde_json::from_str(text).map_err(|e| format!("bad command: {e}"))
    }
}

impl ServerMessage {
    pub fn encode(&self) -> String {
        serde_json::to_string(self).expect("messages serialize")
    }
}

/// One simulation cursor. Cycles are finalized lazily: the step after the
/// last operation of a cycle latches outputs, samples the next inputs and
/// runs step 0 of the next cycle.
pub struct DebugSession {
    engine: Engine,
    stimulus: Stimulus,
    cycles: u64,
    last_step: u64,
    ended: bool,
}

impl DebugSession {
    /// Starts cycle 0. `cycles` is the budget after which stepping ends.
    pub fn new(mut engine: Engine, stimulus: Stimulus, cycles: u64) -> Result<Self, SimError> {
        let ended = cycles == 0;
        if !ended {
            let inputs = stimulus.resolve(engine.cycle(), &engine.program().inputs);
            engine.begin_cycle(&inputs)?;
        }
        Ok(DebugSession {
            engine,
            stimulus,
            cycles,
            last_step: 0,
            ended,
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn ended(&self) -> bool {
        self.ended
    }

    /// Current state without advancing.
    pub fn status(&self) -> ServerMessage {
        let time_fs = match self.engine.edge_time() {
            Ok(t) => t,
            Err(e) => {
                return ServerMessage::Error {
                    message: e.to_string(),
                }
            }
        };
        ServerMessage::State(StateMessage {
            time_fs,
            step: self.last_step,
            steps_total: self.engine.program().steps_total() as u64,
            cycle: self.engine.cycle(),
            amplitudes: self
                .engine
                .state()
                .snapshot()
                .into_iter()
                .map(|(mag, phase)| Amplitude { mag, phase })
                .collect(),
            outputs: self.engine.outputs_presented(),
        })
    }

    /// Executes exactly one scheduled operation.
    pub fn handle_step(&mut self) -> ServerMessage {
        match self.try_step() {
            Ok(true) => self.status(),
            Ok(false) => ServerMessage::Ended,
            Err(e) => {
                self.ended = true;
                ServerMessage::Error {
                    message: e.to_string(),
                }
            }
        }
    }

    fn try_step(&mut self) -> Result<bool, SimError> {
        if self.ended {
            return Ok(false);
        }
        let total = self.engine.program().steps_total();
        if self.engine.next_step() >= total {
            if self.engine.cycle() + 1 >= self.cycles {
                self.ended = true;
                return Ok(false);
            }
            self.engine.end_cycle()?;
            let inputs = self.stimulus.resolve(self.engine.cycle(), &self.engine.program().inputs);
            self.engine.begin_cycle(&inputs)?;
            self.last_step = 0;
        }
        if let Some(at) = self.engine.step()? {
            self.last_step = at.delta_step;
        }
        Ok(true)
    }

    pub fn handle(&mut self, cmd: CommandMessage) -> ServerMessage {
        match cmd {
            CommandMessage::Step => self.handle_step(),
            CommandMessage::Status if self.ended => ServerMessage::Ended,
            CommandMessage::Status => self.status(),
        }
    }
}

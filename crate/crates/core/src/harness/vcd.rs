//! Value change dump output.
//!
//! Variables are the top-level bit ports in declaration order, with
//! identifiers handed out from `!` upward. Designs whose gates are all
//! unclocked get an extra `clk` variable so the waveform still shows the
//! harness clock.

use std::io::{self, Write};

use crate::sim::{ClockConfig, CycleRecord, PortRole, Program, SimError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcdVar {
    pub id: String,
    pub name: String,
    pub role: PortRole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcdLayout {
    pub scope: String,
    pub vars: Vec<VcdVar>,
}

/// Printable identifier for the `i`-th variable: `!`, `"`, … `~`, `!!`, …
pub fn vcd_id(mut i: usize) -> String {
    const FIRST: u8 = b'!';
    const RADIX: usize = (b'~' - b'!' + 1) as usize;
    let mut id = vec![FIRST + (i % RADIX) as u8];
    i /= RADIX;
    while i > 0 {
        i -= 1;
        id.push(FIRST + (i % RADIX) as u8);
        i /= RADIX;
    }
    id.reverse();
    String::from_utf8(id).expect("ascii")
}

impl VcdLayout {
    pub fn new(top: &str, program: &Program) -> VcdLayout {
        let mut vars: Vec<VcdVar> = program
            .ports
            .iter()
            .enumerate()
            .map(|(i, p)| VcdVar {
                id: vcd_id(i),
                name: p.name.clone(),
                role: p.role,
            })
            .collect();
        if !vars.iter().any(|v| v.role == PortRole::Clock) {
            let name = if vars.iter().any(|v| v.name == "clk") {
                "qsim_clk"
            } else {
                "clk"
            };
            vars.push(VcdVar {
                id: vcd_id(vars.len()),
                name: name.to_string(),
                role: PortRole::Clock,
            });
        }
        VcdLayout {
            scope: top.to_string(),
            vars,
        }
    }
}

#[derive(Debug)]
pub enum VcdError {
    Io(io::Error),
    Time(SimError),
}

impl std::fmt::Display for VcdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VcdError::Io(e) => write!(f, "writing VCD: {e}"),
            VcdError::Time(e) => write!(f, "writing VCD: {e}"),
        }
    }
}

impl std::error::Error for VcdError {}

impl From<io::Error> for VcdError {
    fn from(e: io::Error) -> Self {
        VcdError::Io(e)
    }
}

impl From<SimError> for VcdError {
    fn from(e: SimError) -> Self {
        VcdError::Time(e)
    }
}

struct Out<W> {
    sink: W,
    bytes: usize,
    last_time: Option<u64>,
}

impl<W: Write> Out<W> {
    fn line(&mut self, s: &str) -> io::Result<()> {
        self.sink.write_all(s.as_bytes())?;
        self.sink.write_all(b"\n")?;
        self.bytes += s.len() + 1;
        Ok(())
    }

    fn time(&mut self, t: u64) -> io::Result<()> {
        if self.last_time != Some(t) {
            self.line(&format!("#{t}"))?;
            self.last_time = Some(t);
        }
        Ok(())
    }
}

/// Writes the waveform of `records`. Each rising edge lists the clock and
/// every port's sampled value; falling edges list only the clock.
pub fn write_vcd<W: Write>(
    layout: &VcdLayout,
    records: &[CycleRecord],
    clock: &ClockConfig,
    sink: W,
) -> Result<usize, VcdError> {
    let mut out = Out {
        sink,
        bytes: 0,
        last_time: None,
    };
    out.line(&format!("$version qhdl {} $end", env!("CARGO_PKG_VERSION")))?;
    out.line("$timescale 1 fs $end")?;
    out.line(&format!("$scope module {} $end", layout.scope))?;
    for v in &layout.vars {
        out.line(&format!("$var wire 1 {} {} $end", v.id, v.name))?;
    }
    out.line("$upscope $end")?;
    out.line("$enddefinitions $end")?;

    let value = |v: &VcdVar, r: Option<&CycleRecord>| -> u8 {
        let Some(r) = r else { return 0 };
        match v.role {
            PortRole::Clock => 1,
            PortRole::Input(_) => r.inputs.get(&v.name).copied().unwrap_or(0),
            PortRole::Output(_) => r.outputs_presented.get(&v.name).copied().unwrap_or(0),
        }
    };

    out.time(0)?;
    out.line("$dumpvars")?;
    for v in &layout.vars {
        let b = match v.role {
            PortRole::Input(_) => value(v, records.first()),
            _ => 0,
        };
        out.line(&format!("{b}{}", v.id))?;
    }
    out.line("$end")?;

    for r in records {
        out.time(clock.edge(r.cycle)?)?;
        for v in &layout.vars {
            out.line(&format!("{}{}", value(v, Some(r)), v.id))?;
        }
        out.time(clock.falling(r.cycle)?)?;
        for v in layout.vars.iter().filter(|v| v.role == PortRole::Clock) {
            out.line(&format!("0{}", v.id))?;
        }
    }
    out.sink.flush()?;
    Ok(out.bytes)
}

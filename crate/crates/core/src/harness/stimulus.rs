//! Stimulus files.
//!
//! ```text
//! # Bell testbench: both inputs held low
//! default a_in 0
//! default b_in 0
//! at 5 a_in 1
//! ```
//!
//! The value of an input at cycle `c` is the last `at` line for it with a
//! cycle no later than `c`, else its `default`, else 0.

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StimulusError {
    #[error("stimulus line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("stimulus line {line}: `{name}` is not a data input of the design")]
    UnknownInput { line: usize, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub name: String,
    pub value: u8,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stimulus {
    /// In file order; a later default for the same name wins.
    pub defaults: Vec<Assignment>,
    /// Sorted by cycle; file order within a cycle.
    pub overrides: Vec<(u64, Assignment)>,
}

pub fn parse_stimulus(text: &str) -> Result<Stimulus, StimulusError> {
    let mut stim = Stimulus::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").to_ascii_lowercase();
        let words: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| StimulusError::Syntax { line, message };
        let bit = |w: &str| match w {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(err(format!("expected 0 or 1, found `{other}`"))),
        };
        let name = |w: &str| {
            let ok = w.starts_with(|c: char| c.is_ascii_alphabetic())
                && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if ok {
                Ok(w.to_string())
            } else {
                Err(err(format!("`{w}` is not an input name")))
            }
        };
        match words.as_slice() {
            [] => {}
            ["default", n, v] => stim.defaults.push(Assignment {
                name: name(n)?,
                value: bit(v)?,
                line,
            }),
            ["at", c, n, v] => {
                let cycle = c
                    .parse::<u64>()
                    .map_err(|_| err(format!("`{c}` is not a cycle number")))?;
                stim.overrides.push((
                    cycle,
                    Assignment {
                        name: name(n)?,
                        value: bit(v)?,
                        line,
                    },
                ));
            }
            [kw, ..] if *kw == "default" || *kw == "at" => {
                let usage = if *kw == "default" {
                    "default <name> <0|1>"
                } else {
                    "at <cycle> <name> <0|1>"
                };
                return Err(err(format!("expected `{usage}`")));
            }
            [other, ..] => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    stim.overrides.sort_by_key(|(c, _)| *c);
    Ok(stim)
}

impl Stimulus {
    /// Checks every name against the design's data inputs.
    pub fn validate(&self, inputs: &[String]) -> Result<(), StimulusError> {
        let all = self.defaults.iter().chain(self.overrides.iter().map(|(_, a)| a));
        for a in all {
            if !inputs.contains(&a.name) {
                return Err(StimulusError::UnknownInput {
                    line: a.line,
                    name: a.name.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn value(&self, cycle: u64, input: &str) -> u8 {
        let over = self
            .overrides
            .iter()
            .take_while(|(c, _)| *c <= cycle)
            .filter(|(_, a)| a.name == input)
            .last();
        if let Some((_, a)) = over {
            return a.value;
        }
        self.defaults
            .iter()
            .rfind(|a| a.name == input)
            .map_or(0, |a| a.value)
    }

    /// Values of `inputs` at `cycle`, in the given order.
    pub fn resolve(&self, cycle: u64, inputs: &[String]) -> Vec<u8> {
        inputs.iter().map(|i| self.value(cycle, i)).collect()
    }
}

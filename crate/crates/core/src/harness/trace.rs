//! JSON-lines state trace: one object per executed operation.
//!
//! `{"time_fs":5000000,"step":3,"amps":[[0.70710678118654757,0],...]}`
//!
//! Reals are printed like C's `%.17g`, which round-trips every double.

use std::io::{self, Write};

use crate::sim::SimTime;

/// Formats `x` as C's `printf("%.17g", x)` does.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    const P: i32 = 17;
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Streams trace lines to a sink.
pub struct StateTraceWriter<W: Write> {
    sink: W,
    written: usize,
}

impl<W: Write> StateTraceWriter<W> {
    pub fn new(sink: W) -> Self {
        StateTraceWriter { sink, written: 0 }
    }

    pub fn write(&mut self, at: SimTime, snapshot: &[(f64, f64)]) -> io::Result<()> {
        let mut line = format!("{{\"time_fs\":{},\"step\":{},\"amps\":[", at.time_fs, at.delta_step);
        for (i, (mag, phase)) in snapshot.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push('[');
            line.push_str(&format_g17(*mag));
            line.push(',');
            line.push_str(&format_g17(*phase));
            line.push(']');
        }
        line.push_str("]}\n");
        self.sink.write_all(line.as_bytes())?;
        self.written += line.len();
        Ok(())
    }

    pub fn bytes_written(&self) -> usize {
        self.written
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.sink.flush()?;
        Ok(self.sink)
    }
}

pub fn write_state_trace<W: Write>(snapshots: &[(SimTime, Vec<(f64, f64)>)], sink: W) -> io::Result<usize> {
    let mut w = StateTraceWriter::new(sink);
    for (at, snap) in snapshots {
        w.write(*at, snap)?;
    }
    let n = w.bytes_written();
    w.finish()?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf() {
        // Expected strings are what glibc prints for "%.17g".
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (std::f64::consts::FRAC_1_SQRT_2, "0.70710678118654757"),
            (std::f64::consts::PI, "3.1415926535897931"),
            (0.1, "0.10000000000000001"),
            (1e-5, "1.0000000000000001e-05"),
            (1.5e-300, "1.5000000000000001e-300"),
            (1e17, "1e+17"),
            (12345678901234567.0, "12345678901234568"),
            (0.0001, "0.0001"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g17(x), want, "{x:e}");
        }
    }

    #[test]
    fn g17_round_trips() {
        let mut x = 0.123_f64;
        for _ in 0..2000 {
            x = (x * 7.77 + 0.31).fract() * 10f64.powi((x * 40.0) as i32 - 20);
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn one_qubit_line() {
        let mut out = Vec::new();
        let at = SimTime {
            time_fs: 5,
            delta_step: 1,
        };
        let n = write_state_trace(&[(at, vec![(0.0, 0.0), (1.0, 0.0)])], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "{\"time_fs\":5,\"step\":1,\"amps\":[[0,0],[1,0]]}\n");
        assert_eq!(n, text.len());
    }

    #[test]
    fn empty_trace() {
        let mut out = Vec::new();
        assert_eq!(write_state_trace(&[], &mut out).unwrap(), 0);
        assert!(out.is_empty());
    }
}

use std::collections::HashMap;

use proptest::prelude::*;
use qhdl_core::harness::{format_g17, parse_stimulus, run, write_vcd, Stimulus, VcdLayout};
use qhdl_core::samples::BELLSTATE;
use qhdl_core::sim::{ClockConfig, Engine, Program};
use qhdl_core::{compile, CompileOptions, SourceFile};

const INPUTS: [&str; 3] = ["a_in", "b_in", "c"];

#[derive(Clone, Debug)]
enum Line {
    Default(usize, u8),
    At(u64, usize, u8),
    Comment,
}

fn lines() -> impl Strategy<Value = Vec<Line>> {
    let line = prop_oneof![
        (0..3usize, 0..2u8).prop_map(|(n, v)| Line::Default(n, v)),
        (0..12u64, 0..3usize, 0..2u8).prop_map(|(c, n, v)| Line::At(c, n, v)),
        Just(Line::Comment),
    ];
    prop::collection::vec(line, 0..16)
}

fn render(lines: &[Line], upper: bool) -> String {
    let mut s = String::new();
    for l in lines {
        let text = match l {
            Line::Default(n, v) => format!("default {} {v}", INPUTS[*n]),
            Line::At(c, n, v) => format!("  at {c}\t{} {v}   # note", INPUTS[*n]),
            Line::Comment => "# nothing here".to_string(),
        };
        s.push_str(&if upper { text.to_uppercase() } else { text });
        s.push('\n');
    }
    s
}

/// Latest `at` not after `cycle` (file order breaks ties), else the last
/// default, else 0.
fn oracle(lines: &[Line], cycle: u64, input: usize) -> u8 {
    let mut best: Option<(u64, u8)> = None;
    let mut default = 0;
    for l in lines {
        match *l {
            Line::Default(n, v) if n == input => default = v,
            Line::At(c, n, v) if n == input && c <= cycle && best.is_none_or(|(bc, _)| c >= bc) => {
                best = Some((c, v))
            }
            _ => {}
        }
    }
    best.map_or(default, |(_, v)| v)
}

/// Minimal reader: variable names by id, then (time, id, value) changes.
struct Vcd {
    names: HashMap<String, String>,
    changes: Vec<(u64, String, u8)>,
}

fn read_vcd(text: &str) -> Vcd {
    let mut names = HashMap::new();
    let mut changes = Vec::new();
    let mut now = None;
    let mut tokens = text.split_whitespace().peekable();
    while let Some(t) = tokens.next() {
        match t {
            "$var" => {
                let f: Vec<&str> = tokens.by_ref().take_while(|&x| x != "$end").collect();
                names.insert(f[2].to_string(), f[3].to_string());
            }
            "$dumpvars" | "$end" => {}
            _ if t.starts_with('$') => while tokens.next().is_some_and(|x| x != "$end") {},
            _ if t.starts_with('#') => now = Some(t[1..].parse().unwrap()),
            _ => {
                let v = match t.as_bytes()[0] {
                    b'0' => 0,
                    b'1' => 1,
                    other => panic!("unexpected value {}", other as char),
                };
                changes.push((now.expect("change before time"), t[1..].to_string(), v));
            }
        }
    }
    Vcd { names, changes }
}

fn bell_engine(seed: u64, clock: ClockConfig) -> Engine {
    let c = compile(&[SourceFile::new("b.qhdl", BELLSTATE)], &CompileOptions::default()).unwrap();
    Engine::new(Program::new(&c), clock, seed, 24).unwrap()
}

proptest! {
    #[test]
    fn stimulus_resolution_matches_oracle(ls in lines(), upper: bool) {
        let stim = parse_stimulus(&render(&ls, upper)).unwrap();
        let names: Vec<String> = INPUTS.iter().map(|s| s.to_string()).collect();
        prop_assert!(stim.validate(&names).is_ok());
        for cycle in 0..14 {
            let got = stim.resolve(cycle, &names);
            let want: Vec<u8> = (0..3).map(|i| oracle(&ls, cycle, i)).collect();
            prop_assert_eq!(got, want, "cycle {}", cycle);
        }
    }

    #[test]
    fn stimulus_parser_never_panics(text in "\\PC{0,200}") {
        let _ = parse_stimulus(&text);
    }

    #[test]
    fn g17_round_trips(bits: u64) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let back: f64 = format_g17(x).parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }

    #[test]
    fn vcd_round_trip(
        seed: u64,
        cycles in 1u64..30,
        half in 1u64..1_000_000,
        first in 0u64..10_000_000,
        ls in lines(),
    ) {
        let clock = ClockConfig { first_edge_fs: first, period_fs: 2 * half };
        let mut engine = bell_engine(seed, clock);
        let stim: Stimulus = parse_stimulus(&render(&ls, false)).unwrap();
        let out = run(&mut engine, &stim, cycles, |_, _| {}).unwrap();
        let layout = VcdLayout::new("bellstate", engine.program());
        let mut buf = Vec::new();
        write_vcd(&layout, &out.records, &clock, &mut buf).unwrap();
        let vcd = read_vcd(std::str::from_utf8(&buf).unwrap());

        let id_of: HashMap<&str, &str> = vcd.names.iter().map(|(i, n)| (n.as_str(), i.as_str())).collect();
        let clk = id_of["clk"];
        let clk_changes: Vec<(u64, u8)> = vcd
            .changes
            .iter()
            .filter(|(_, id, _)| id == clk)
            .map(|(t, _, v)| (*t, *v))
            .collect();
        let mut want = vec![(0, 0)];
        for k in 0..cycles {
            want.push((first + k * 2 * half, 1));
            want.push((first + k * 2 * half + half, 0));
        }
        prop_assert_eq!(clk_changes, want);

        for r in &out.records {
            let at = first + r.cycle * 2 * half;
            let value = |name: &str| {
                vcd.changes.iter().rev().find(|(t, id, _)| *t <= at && id == id_of[name]).map(|c| c.2)
            };
            for (name, v) in r.inputs.iter().chain(&r.outputs_presented) {
                prop_assert_eq!(value(name), Some(*v), "{} at cycle {}", name, r.cycle);
            }
        }
    }
}

use std::io::{BufRead, BufReader};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn qhdl() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qhdl"));
    c.env("QHDL_NO_COLOR", "1");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    qhdl().args(args).output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn bell() -> String {
    data("bellstate.qhdl").display().to_string()
}

#[test]
fn compile_bell() {
    let dir = tempfile::tempdir().unwrap();
    let wrapper = dir.path().join("bs.vhdl");
    let out = run(&["compile", &bell(), "--top", "bellstate", "-o", wrapper.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    assert!(stdout.starts_with("gates=6 qubits=2 steps=6"), "{stdout}");
    let vhdl = std::fs::read_to_string(&wrapper).unwrap();
    assert!(vhdl.contains("entity bellstate is"));
}

#[test]
fn compile_default_wrapper_path() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("bell.qhdl");
    std::fs::copy(data("bellstate.qhdl"), &src).unwrap();
    let out = run(&["compile", src.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("bellstate.vhdl").exists());
}

#[test]
fn rule_violation_exits_1() {
    let out = run(&["compile", data("rule_ii.qhdl").to_str().unwrap(), "-o", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains("rule_ii.qhdl:5:"), "{err}");
    assert!(err.contains("error: [rule ii]"), "{err}");
    assert!(!err.contains('\x1b'));
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(run(&["compile", "/definitely/not/here.qhdl"]).status.code(), Some(2));
    assert_eq!(run(&["run", "/definitely/not/here.qhdl"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["run", &bell(), "--cycles", "0"]).status.code(), Some(1));
    assert_eq!(run(&["debug", &bell(), "--debug-port", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn run_defaults() {
    let out = run(&["run", &bell()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = text(&out.stdout);
    assert!(stdout.ends_with("total 100\n"), "{stdout}");
    for line in stdout.lines().filter(|l| !l.starts_with("total")) {
        let key = line.split(' ').next().unwrap();
        assert!(key == "00" || key == "11", "{stdout}");
    }
}

#[test]
fn one_cycle() {
    let out = run(&["run", &bell(), "--cycles", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "total 0\n");
}

#[test]
fn run_is_deterministic() {
    let a = run(&["run", &bell(), "--seed", "7", "--log"]);
    let b = run(&["run", &bell(), "--seed", "7", "--log"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(text(&a.stdout).starts_with("cycle 0: a_out=0 b_out=0\n"));
}

#[test]
fn stimulus_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad_name = dir.path().join("a.stim");
    std::fs::write(&bad_name, "default c_in 1\n").unwrap();
    let bad_syntax = dir.path().join("b.stim");
    std::fs::write(&bad_syntax, "default a_in 2\n").unwrap();
    for p in [&bad_name, &bad_syntax] {
        let out = run(&["run", &bell(), "--stimulus", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{}", text(&out.stderr));
        assert!(text(&out.stderr).contains("line 1"));
    }
    let out = run(&["run", &bell(), "--stimulus", "/nope.stim"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stimulus_drives_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let stim = dir.path().join("s.stim");
    std::fs::write(&stim, "# anti-correlated\ndefault b_in 1\n").unwrap();
    let out = run(&["run", &bell(), "--stimulus", stim.to_str().unwrap()]);
    let stdout = text(&out.stdout);
    assert!(stdout.lines().all(|l| l.starts_with("01 ") || l.starts_with("10 ") || l == "total 100"), "{stdout}");
}

#[test]
fn bad_clock_and_limit() {
    assert_eq!(run(&["run", &bell(), "--clock-period-fs", "1"]).status.code(), Some(1));
    let out = run(&["run", &bell(), "--qubit-limit", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("limit of 1"));
}

#[test]
fn time_overflow_is_a_simulation_error() {
    let out = run(&["run", &bell(), "--clock-first-edge-fs", &(u64::MAX - 5).to_string()]);
    assert_eq!(out.status.code(), Some(3), "{}", text(&out.stderr));
}

#[test]
fn vcd_and_trace_files() {
    let dir = tempfile::tempdir().unwrap();
    let vcd = dir.path().join("b.vcd");
    let trace = dir.path().join("b.jsonl");
    let out = run(&[
        "run",
        &bell(),
        "--cycles",
        "3",
        "--vcd",
        vcd.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&vcd).unwrap().contains("#25000000\n"));
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[3]["step"], 3);
    assert_eq!(lines[3]["time_fs"], 5_000_000);
    let out = run(&["run", &bell(), "--vcd", "/no/such/dir/x.vcd"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn debug_port_in_use() {
    let holder = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = holder.local_addr().unwrap().port().to_string();
    let out = run(&["debug", &bell(), "--debug-port", &port]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn debug_serves_and_steps() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let mut child = qhdl()
        .args(["debug", &bell(), "--debug-port", &port.to_string()])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    assert_eq!(line.trim(), format!("QSIM debugger at http://localhost:{port}/"));

    let (mut ws, _) = tungstenite::connect(format!("ws://127.0.0.1:{port}/ws")).unwrap();
    let mut last = ws.read().unwrap().into_text().unwrap().to_string();
    for _ in 0..6 {
        ws.send(tungstenite::Message::text(r#"{"type":"step"}"#)).unwrap();
        last = ws.read().unwrap().into_text().unwrap().to_string();
    }
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!((v["cycle"].as_u64(), v["step"].as_u64()), (Some(0), Some(5)));
    // After measurement the state is a basis state.
    let mags: Vec<f64> = v["amplitudes"].as_array().unwrap().iter().map(|a| a["mag"].as_f64().unwrap()).collect();
    assert!(mags == [1.0, 0.0, 0.0, 0.0] || mags == [0.0, 0.0, 0.0, 1.0], "{mags:?}");
    assert!(child.try_wait().unwrap().is_none(), "server exited");
    child.kill().unwrap();
    child.wait().unwrap();
}

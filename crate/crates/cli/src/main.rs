//! `qhdl`: compile, run and debug QHDL designs.
//!
//! Exit codes: 0 success, 1 invalid input (usage, diagnostics, stimulus),
//! 2 I/O failure, 3 simulation failure, 4 debug port in use.

use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qhdl_core::elab::{emit_vhdl_wrapper, DEFAULT_QUBIT_LIMIT};
use qhdl_core::harness::{
    cycle_log_line, parse_stimulus, report_histogram, run, write_vcd, StateTraceWriter, Stimulus, VcdLayout,
};
use qhdl_core::sim::{ClockConfig, Engine, Program};
use qhdl_core::{compile, CompileOptions, Compiled, Diagnostic, SourceFile};
use qhdl_debug_server::{DebugError, DebugServer, DebugSession};

#[derive(Parser)]
#[command(name = "qhdl", version, about = "QHDL quantum circuit compiler and simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a design, print its summary and write the VHDL wrapper.
    Compile(CompileArgs),
    /// Simulate and print the output histogram.
    Run(RunArgs),
    /// Serve the single-step web debugger.
    Debug(DebugArgs),
}

#[derive(Args)]
struct DesignArgs {
    /// QHDL source files; entities resolve across all of them.
    #[arg(required = true)]
    sources: Vec<PathBuf>,
    /// Top-level entity (default: the one entity nothing instantiates).
    #[arg(long)]
    top: Option<String>,
    #[arg(long, default_value_t = DEFAULT_QUBIT_LIMIT)]
    qubit_limit: usize,
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    design: DesignArgs,
    /// Wrapper path (default: `<top>.vhdl` beside the first source).
    #[arg(long, short = 'o')]
    wrapper: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(1..))]
    cycles: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Stimulus file (`default <name> <0|1>`, `at <cycle> <name> <0|1>`).
    #[arg(long)]
    stimulus: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000_000)]
    clock_period_fs: u64,
    #[arg(long, default_value_t = 5_000_000)]
    clock_first_edge_fs: u64,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    design: DesignArgs,
    #[command(flatten)]
    sim: SimArgs,
    /// Write a VCD waveform.
    #[arg(long)]
    vcd: Option<PathBuf>,
    /// Write the state vector after every operation as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print `cycle <k>: <output>=<bit> ...` for every cycle before the histogram.
    #[arg(long)]
    log: bool,
}

#[derive(Args)]
struct DebugArgs {
    #[command(flatten)]
    design: DesignArgs,
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long, default_value_t = 4711, value_parser = clap::value_parser!(u16).range(1..))]
    debug_port: u16,
    /// Serve `/assets/*` from this directory ahead of the built-in files.
    #[arg(long)]
    assets_dir: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn io(what: &Path, e: io::Error) -> Self {
        Failure {
            code: 2,
            message: format!("{}: {e}", what.display()),
        }
    }

    fn sim(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 3,
            message: format!("simulation failed: {e}"),
        }
    }
}

fn color() -> bool {
    std::env::var_os("QHDL_NO_COLOR").is_none() && io::stderr().is_terminal()
}

fn error_prefix() -> &'static str {
    if color() {
        "\x1b[1;31merror\x1b[0m"
    } else {
        "error"
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Compile(a) => cmd_compile(a),
        Command::Run(a) => cmd_run(a),
        Command::Debug(a) => cmd_debug(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("{}: {}", error_prefix(), f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn load(design: &DesignArgs) -> Result<Compiled, Failure> {
    let mut sources = Vec::new();
    for path in &design.sources {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        sources.push(SourceFile::new(path.display().to_string(), text));
    }
    let options = CompileOptions {
        top: design.top.clone(),
        qubit_limit: design.qubit_limit,
    };
    compile(&sources, &options).map_err(|diags| report(&diags))
}

fn report(diags: &[Diagnostic]) -> Failure {
    let color = color();
    for d in diags {
        eprintln!("{}", d.render(color));
    }
    Failure {
        code: 1,
        message: String::new(),
    }
}

fn cmd_compile(args: CompileArgs) -> Result<(), Failure> {
    let c = load(&args.design)?;
    let path = args.wrapper.unwrap_or_else(|| {
        let dir = args.design.sources[0].parent().unwrap_or(Path::new(""));
        dir.join(format!("{}.vhdl", c.top.name.name))
    });
    std::fs::write(&path, emit_vhdl_wrapper(&c.netlist, &c.top)).map_err(|e| Failure::io(&path, e))?;
    println!("{}", c.summary());
    println!("wrapper {}", path.display());
    Ok(())
}

fn prepare(design: &DesignArgs, sim: &SimArgs) -> Result<(Compiled, Engine, Stimulus), Failure> {
    let c = load(design)?;
    let stimulus = match &sim.stimulus {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            parse_stimulus(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
        }
        None => Stimulus::default(),
    };
    let program = Program::new(&c);
    stimulus.validate(&program.inputs).map_err(|e| Failure::input(e.to_string()))?;
    let clock = ClockConfig {
        first_edge_fs: sim.clock_first_edge_fs,
        period_fs: sim.clock_period_fs,
    };
    clock.validate().map_err(|e| Failure::input(e.to_string()))?;
    let engine = Engine::new(program, clock, sim.seed, design.qubit_limit).map_err(Failure::sim)?;
    Ok((c, engine, stimulus))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::io(path, e))
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let (c, mut engine, stimulus) = prepare(&args.design, &args.sim)?;

    let mut trace = match &args.trace {
        Some(path) => Some((StateTraceWriter::new(create(path)?), path)),
        None => None,
    };
    let mut trace_err = None;
    let out = run(&mut engine, &stimulus, args.sim.cycles, |at, state| {
        if let Some((w, path)) = trace.as_mut() {
            if trace_err.is_none() {
                if let Err(e) = w.write(at, &state.snapshot()) {
                    trace_err = Some(Failure::io(path, e));
                }
            }
        }
    })
    .map_err(Failure::sim)?;
    if let Some(f) = trace_err {
        return Err(f);
    }
    if let Some((w, path)) = trace {
        w.finish().map_err(|e| Failure::io(path, e))?;
    }

    if let Some(path) = &args.vcd {
        let layout = VcdLayout::new(&c.top.name.name, engine.program());
        write_vcd(&layout, &out.records, &engine.clock(), create(path)?).map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", path.display()),
        })?;
    }

    let mut stdout = io::stdout().lock();
    let mut text = String::new();
    if args.log {
        for r in &out.records {
            text.push_str(&cycle_log_line(r));
            text.push('\n');
        }
    }
    text.push_str(&report_histogram(&out.histogram));
    stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Failure::io(Path::new("<stdout>"), e))
}

fn cmd_debug(args: DebugArgs) -> Result<(), Failure> {
    let (_, engine, stimulus) = prepare(&args.design, &args.sim)?;
    let session = DebugSession::new(engine, stimulus, args.sim.cycles).map_err(Failure::sim)?;
    let mut server = DebugServer::bind(args.debug_port, session).map_err(|e| match e {
        DebugError::PortInUse(p) => Failure {
            code: 4,
            message: format!("port {p} is already in use"),
        },
        DebugError::Io(e) => Failure::io(Path::new("<socket>"), e),
    })?;
    if let Some(dir) = args.assets_dir {
        server = server.with_assets(dir);
    }
    let port = server.local_addr().map(|a| a.port()).unwrap_or(args.debug_port);
    println!("QSIM debugger at http://localhost:{port}/");
    let _ = io::stdout().flush();
    server.serve().map_err(|e| Failure::io(Path::new("<socket>"), io::Error::other(e.to_string())))
}

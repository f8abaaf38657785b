#![no_main]

use libfuzzer_sys::fuzz_target;
use qhdl_core::sim::{ClockConfig, Engine, Program};
use qhdl_core::{compile, CompileOptions, SourceFile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let opts = CompileOptions { qubit_limit: 10, ..Default::default() };
    let Ok(c) = compile(&[SourceFile::new("fuzz.qhdl", text)], &opts) else { return };
    let _ = c.summary();
    let _ = qhdl_core::elab::emit_vhdl_wrapper(&c.netlist, &c.top);
    // Anything that elaborates must also simulate a couple of cycles.
    let program = Program::new(&c);
    let inputs = vec![1; program.inputs.len()];
    let mut engine = Engine::new(program, ClockConfig::default(), 1, 10).unwrap();
    for _ in 0..2 {
        let _ = engine.run_cycle(&inputs);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use qhdl_core::harness::parse_stimulus;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(stim) = parse_stimulus(text) {
        let names = ["a_in".to_string(), "b_in".to_string()];
        let _ = stim.validate(&names);
        for cycle in 0..4 {
            assert!(stim.resolve(cycle, &names).iter().all(|&b| b <= 1));
        }
    }
});

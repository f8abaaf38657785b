#![no_main]

use libfuzzer_sys::fuzz_target;
use qhdl_core::frontend::{parse_source, print};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(design) = parse_source("fuzz.qhdl", text) else { return };
    let once = print(&design);
    let again = parse_source("printed.qhdl", &once).expect("printed design reparses");
    assert_eq!(once, print(&again));
});

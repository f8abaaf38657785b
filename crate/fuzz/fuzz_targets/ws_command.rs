#![no_main]

use libfuzzer_sys::fuzz_target;
use qhdl_debug_server::CommandMessage;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = CommandMessage::decode(text);
    }
});

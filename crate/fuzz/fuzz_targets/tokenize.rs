#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(tokens) = qhdl_core::frontend::tokenize("fuzz.qhdl", text) {
            for t in &tokens {
                let end = t.span.offset + t.span.length;
                assert!(text.is_char_boundary(t.span.offset) && end <= text.len());
            }
        }
    }
});

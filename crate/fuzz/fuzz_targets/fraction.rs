#![no_main]

use galton_core::fraction::{format_fraction, parse_fraction};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(value) = parse_fraction(text) {
        let again = parse_fraction(&format_fraction(&value)).expect("formatted fraction parses");
        assert_eq!(value, again);
    }
});

#![no_main]

use galton_core::samplefile::{format_sample, parse_sample};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(values) = parse_sample(text) {
        assert!(values.iter().all(|v| v.is_finite()));
        assert_eq!(parse_sample(&format_sample(&values)).expect("formatted sample parses"), values);
    }
});

#![no_main]

use galton_core::limitlaws::LimitLawSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = serde_json::from_slice::<LimitLawSpec>(data) else { return };
    let _ = spec.validate();
    let json = serde_json::to_string(&spec).expect("specs serialize");
    let again: LimitLawSpec = serde_json::from_str(&json).expect("serialized spec parses");
    assert_eq!(spec.hash(), again.hash());
});

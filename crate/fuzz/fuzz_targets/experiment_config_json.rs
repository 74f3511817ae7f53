#![no_main]

use galton_core::verify::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(cfg) = serde_json::from_slice::<ExperimentConfig>(data) else { return };
    let _ = cfg.validate();
    let json = serde_json::to_string(&cfg).expect("configs serialize");
    let again: ExperimentConfig = serde_json::from_str(&json).expect("serialized config parses");
    assert_eq!(cfg.hash(), again.hash());
});

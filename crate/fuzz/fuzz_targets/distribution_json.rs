#![no_main]

use galton_core::Distribution;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(law) = serde_json::from_slice::<Distribution>(data) else { return };
    let json = serde_json::to_string(&law).expect("laws serialize");
    let again: Distribution = serde_json::from_str(&json).expect("serialized law parses");
    assert_eq!(law, again);
    for t in [1e-9, 0.25, 0.5, 0.75, 1.0] {
        let x = law.quantile(t);
        assert!(!x.is_nan());
        assert!((0.0..=1.0).contains(&law.cdf(x)));
    }
});

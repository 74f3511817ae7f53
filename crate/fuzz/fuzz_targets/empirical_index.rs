#![no_main]

use galton_core::galton::{empirical_index, galton_count};
use galton_core::oracle::{brute_measure, exact_cells};
use libfuzzer_sys::fuzz_target;

// First byte splits the rest into two samples of small integers, so ties are common.
fuzz_target!(|data: &[u8]| {
    let Some((&split, rest)) = data.split_first() else { return };
    let cut = split as usize % (rest.len() + 1);
    let (a, b) = rest.split_at(cut);
    if a.is_empty() || b.is_empty() || a.len() > 24 || b.len() > 24 {
        return;
    }
    let xs: Vec<f64> = a.iter().map(|&v| f64::from(v % 16)).collect();
    let ys: Vec<f64> = b.iter().map(|&v| f64::from(v % 16)).collect();
    let report = empirical_index(&xs, &ys).expect("non-empty samples");
    let brute = brute_measure(&xs, &ys, exact_cells(xs.len(), ys.len())).expect("small grid");
    assert_eq!(report.gamma_hat.to_rational(), brute);
    if xs.len() == ys.len() {
        let count = galton_count(&xs, &ys).expect("equal sizes");
        assert_eq!(report.galton_count, Some(count));
        assert_eq!(report.gamma_hat.numer() * xs.len() as u64, count * report.gamma_hat.denom());
    }
});

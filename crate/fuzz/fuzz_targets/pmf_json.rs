#![no_main]
use lcdist::DiscretePmf;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(pmf) = DiscretePmf::from_json_bytes(data) else {
        return;
    };
    let total: f64 = pmf.weights().iter().sum();
    assert!((total - 1.0).abs() <= 1e-9);
    assert!(pmf.weights().first().is_some_and(|&w| w > 0.0));
    assert!(pmf.weights().last().is_some_and(|&w| w > 0.0));

    // A written pmf reloads to the same weights.
    let back = DiscretePmf::from_json(&pmf.to_json()).expect("written pmf reloads");
    assert_eq!(back.offset(), pmf.offset());
    assert_eq!(back.weights(), pmf.weights());
});

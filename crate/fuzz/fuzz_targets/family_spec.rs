#![no_main]
use lcdist::logconcave::{is_log_concave, LC_TOL};
use lcdist::pmf::parse_family;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: (u64, &str)| {
    let (seed, spec) = input;
    let Ok(pmf) = parse_family(spec, seed) else {
        return;
    };
    let total: f64 = pmf.weights().iter().sum();
    assert!((total - 1.0).abs() <= 1e-9, "{spec}: mass {total}");
    if spec.trim_start().to_ascii_lowercase().starts_with("random") {
        assert!(is_log_concave(&pmf, LC_TOL).is_log_concave, "{spec}");
    }
});

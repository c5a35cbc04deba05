#![no_main]
use lcdist::metric::{parse_metric_list, Metric};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(metrics) = parse_metric_list(text) {
        assert!(!metrics.is_empty());
        for m in metrics {
            assert_eq!(m.to_string().parse::<Metric>().unwrap(), m);
        }
    }
});

//! Replays the checked-in fuzz seeds through the parser entry points, so the
//! corpora stay meaningful without a nightly toolchain.

use std::fs;
use std::path::PathBuf;

use lcdist::metric::{parse_metric_list, Metric};
use lcdist::pmf::parse_family;
use lcdist::DiscretePmf;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (
                path.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn pmf_json_seeds() {
    let mut loaded = 0;
    for (name, bytes) in seeds("pmf_json") {
        let Ok(pmf) = DiscretePmf::from_json_bytes(&bytes) else {
            continue;
        };
        loaded += 1;
        let back = DiscretePmf::from_json(&pmf.to_json()).unwrap();
        assert_eq!(back.weights(), pmf.weights(), "{name}");
        assert_eq!(back.offset(), pmf.offset(), "{name}");
    }
    assert!(loaded >= 4);
}

#[test]
fn metric_list_seeds() {
    for (name, bytes) in seeds("metric_list") {
        let text = String::from_utf8(bytes).unwrap();
        match parse_metric_list(&text) {
            Ok(ms) => {
                for m in ms {
                    assert_eq!(m.to_string().parse::<Metric>().unwrap(), m, "{name}");
                }
            }
            Err(_) => assert_eq!(name, "bad_order"),
        }
    }
}

#[test]
fn family_spec_seeds() {
    for (name, bytes) in seeds("family_spec") {
        // Eight seed bytes, then the spec text.
        let seed = u64::from_le_bytes(bytes[..8].try_into().unwrap());
        let spec = std::str::from_utf8(&bytes[8..]).unwrap();
        let pmf = parse_family(spec, seed).unwrap_or_else(|e| panic!("{name}: {e}"));
        let total: f64 = pmf.weights().iter().sum();
        assert!((total - 1.0).abs() <= 1e-9, "{name}");
    }
}

use proptest::prelude::*;

use lcdist::bounds::{self, q_class_fit, q_class_membership};
use lcdist::distances::{bounded_lipschitz, levy_prokhorov, tv_sum, wasserstein};
use lcdist::logconcave::{abs_value_transform, is_log_concave, random_log_concave_seeded, LC_TOL};
use lcdist::metric::Metric;
use lcdist::oracles::bl_bruteforce;
use lcdist::pmf::make_pmf;
use lcdist::DiscretePmf;

fn pmf_strategy(max_len: usize) -> impl Strategy<Value = DiscretePmf> {
    (-6i64..6, prop::collection::vec(0.0f64..1.0, 1..=max_len)).prop_filter_map("positive mass", |(offset, mut w)| {
        // Pin one weight away from zero so the sum is positive.
        let last = w.len() - 1;
        w[last] += 0.05;
        make_pmf(offset, &w, true).ok()
    })
}

fn lc_strategy(max_len: usize, symmetric: bool) -> impl Strategy<Value = DiscretePmf> {
    (1..=max_len, any::<u64>()).prop_map(move |(m, seed)| random_log_concave_seeded(m, symmetric, seed).unwrap())
}

const METRICS: [Metric; 4] = [
    Metric::TotalVariation,
    Metric::LevyProkhorov,
    Metric::BoundedLipschitz,
    Metric::Wasserstein(1.0),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn metric_axioms(a in pmf_strategy(8), b in pmf_strategy(8), c in pmf_strategy(8)) {
        for m in METRICS {
            let ab = m.evaluate(&a, &b).unwrap();
            let ba = m.evaluate(&b, &a).unwrap();
            let ac = m.evaluate(&a, &c).unwrap();
            let cb = m.evaluate(&c, &b).unwrap();
            prop_assert!(ab >= 0.0, "{m}");
            prop_assert_eq!(m.evaluate(&a, &a).unwrap(), 0.0, "{}", m);
            prop_assert!((ab - ba).abs() <= 1e-12 * (1.0 + ab), "{m}: {ab} vs {ba}");
            prop_assert!(ab <= ac + cb + 1e-12 * (1.0 + ab), "{m}: {ab} > {ac} + {cb}");
        }
    }

    #[test]
    fn wasserstein_monotone_in_order(a in pmf_strategy(10), b in pmf_strategy(10)) {
        let mut prev = 0.0;
        for p in [1.0, 1.5, 2.0, 3.0, 5.0] {
            let w = wasserstein(p, &a, &b).unwrap();
            prop_assert!(w + 1e-12 * (1.0 + w) >= prev, "W_{p} = {w} < {prev}");
            prev = w;
        }
    }

    #[test]
    fn distance_ordering(a in pmf_strategy(10), b in pmf_strategy(10)) {
        let tv = tv_sum(&a, &b);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&tv));
        prop_assert!((levy_prokhorov(&a, &b) - (tv / 2.0).min(1.0)).abs() <= 1e-15);
        prop_assert!(tv / 2.0 <= wasserstein(1.0, &a, &b).unwrap() + 1e-12);
    }

    #[test]
    fn generator_is_log_concave(a in lc_strategy(200, false), s in lc_strategy(200, true)) {
        prop_assert!(is_log_concave(&a, LC_TOL).is_log_concave);
        prop_assert!(is_log_concave(&s, LC_TOL).is_log_concave);
        prop_assert_eq!(s.min_support(), -s.max_support());
        for (k, p) in s.iter() {
            prop_assert_eq!(p, s.pmf(-k));
        }
        prop_assert!(s.is_centered(1e-9));
    }

    #[test]
    fn abs_of_symmetric_log_concave(s in lc_strategy(300, true)) {
        prop_assert!(is_log_concave(&abs_value_transform(&s), LC_TOL).is_log_concave);
        prop_assert!(bounds::check_symmetric_abs(&s).unwrap().pass);
    }

    #[test]
    fn json_round_trip(a in pmf_strategy(40)) {
        let back = DiscretePmf::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back.offset(), a.offset());
        prop_assert_eq!(back.weights(), a.weights());
        prop_assert_eq!(back.fingerprint(), a.fingerprint());
    }

    #[test]
    fn q_class_fit_is_member(s in lc_strategy(60, true), a in 0.05f64..4.0) {
        let params = q_class_fit(&s, a).unwrap();
        prop_assert!(q_class_membership(&s, params));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bounded_lipschitz_matches_enumeration(a in pmf_strategy(5), b in pmf_strategy(5)) {
        let hull = a.max_support().max(b.max_support()) - a.min_support().min(b.min_support()) + 1;
        prop_assume!(hull <= 10);
        let fast = bounded_lipschitz(&a, &b).0;
        let slow = bl_bruteforce(&a, &b).unwrap();
        prop_assert!((fast - slow).abs() <= 1e-12, "{fast} vs {slow}");
    }
}

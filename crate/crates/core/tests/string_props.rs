use boxdim_core::analysis::schedule;
use boxdim_core::fractal::{dim_unbounded, DEFAULT_SCALES};
use boxdim_core::strings::{
    gaps, is_monotone_string, string_dimension, string_eps_min, string_point_set, SequenceGenerator,
};
use proptest::prelude::*;

fn nondecreasing() -> impl Strategy<Value = Vec<f64>> {
    (0.1f64..10.0, prop::collection::vec(prop_oneof![Just(0.0), 1e-3f64..5.0], 2..200)).prop_map(|(a1, steps)| {
        let mut a = vec![a1];
        for s in steps {
            let last = *a.last().unwrap();
            a.push(last + s);
        }
        a
    })
}

fn increasing() -> impl Strategy<Value = Vec<f64>> {
    (0.1f64..10.0, prop::collection::vec(1e-3f64..5.0, 2..200)).prop_map(|(a1, steps)| {
        let mut a = vec![a1];
        for s in steps {
            let last = *a.last().unwrap();
            a.push(last + s);
        }
        a
    })
}

/// Sequences whose gaps are nonincreasing by construction.
fn from_decreasing_gaps() -> impl Strategy<Value = Vec<f64>> {
    (0.1f64..10.0, prop::collection::vec(0.01f64..1.0, 2..200)).prop_map(|(a1, mut w)| {
        w.sort_by(|x, y| y.total_cmp(x));
        let total: f64 = w.iter().sum();
        // spend at most 90% of 1/a1 so every term stays finite
        let scale = 0.9 / (a1 * total);
        let mut a = vec![a1];
        for m in w {
            let last = *a.last().unwrap();
            a.push(1.0 / (1.0 / last - m * scale));
        }
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn gap_sum_is_bounded_by_first_reciprocal(a in nondecreasing()) {
        let mu = gaps(&a).unwrap();
        prop_assert!(mu.iter().all(|&m| m >= 0.0));
        // telescoping: the partial sum is 1/a_1 - 1/a_N
        let sum: f64 = mu.iter().sum();
        prop_assert!(sum <= 1.0 / a[0] * (1.0 + 1e-12));
        prop_assert!((sum - (1.0 / a[0] - 1.0 / a[a.len() - 1])).abs() <= 1e-12 / a[0]);
    }

    #[test]
    fn monotone_iff_gaps_nonincreasing(a in prop_oneof![increasing(), from_decreasing_gaps()]) {
        let mu = gaps(&a).unwrap();
        // the two notions agree up to rounding, so skip near-ties
        let tight = mu.windows(2).any(|w| (w[1] - w[0]).abs() <= 1e-9 * w[0].max(w[1]));
        prop_assume!(!tight);
        let nonincreasing = mu.windows(2).all(|w| w[1] <= w[0]);
        prop_assert_eq!(is_monotone_string(&a).unwrap().monotone, nonincreasing);
    }

    #[test]
    fn power_sequences_are_monotone(alpha in 0.05f64..5.0, n in 3usize..2000) {
        let a = SequenceGenerator::Power { alpha }.prefix(n);
        prop_assert!(is_monotone_string(&a).unwrap().monotone);
    }
}

#[test]
fn string_fit_agrees_with_the_point_set() {
    for alpha in [0.5, 1.0, 2.0] {
        let a = SequenceGenerator::Power { alpha }.prefix(100_000);
        let fit = string_dimension(&a).unwrap().dimension.unwrap();
        let eps = schedule(string_eps_min(&a).unwrap(), None, DEFAULT_SCALES).unwrap();
        let geo = dim_unbounded(&string_point_set(&a).unwrap(), &eps).unwrap().dimension;
        assert!((fit - geo).abs() <= 0.05, "alpha {alpha}: {fit} vs {geo}");
    }
}

//! Property-based invariants: serde round-trips, probability clamping,
//! entropy identities, overlap-distribution combinatorics, and degenerate
//! regimes that must stay finite or explicitly unbounded — never NaN.

use proptest::prelude::*;
use sensecap::bounds::{
    fano_lb_asymptotic, fano_lb_exact_recovery, fano_lb_finite_n, lb_capacity_discrete,
    sign_pattern_error_lb, ub_capacity_discrete_gaussian, ub_capacity_diversity,
};
use sensecap::infotheory::{binary_entropy, entropy_pmf, overlap_pmf, rd_mixture_gaussian};
use sensecap::models::{derived_count, Distortion, EnsembleSpec, Scenario, SignalModel};

fn assert_probability(value: Option<f64>, context: &str) {
    let v = value.unwrap_or_else(|| panic!("{context}: no finite value"));
    assert!((0.0..=1.0).contains(&v) && v.is_finite(), "{context}: {v}");
}

proptest! {
    #[test]
    fn scenario_round_trips(n in 1usize..1000, m in 1usize..1000, snr in 0.0f64..1e4, d0 in 0.0f64..1.0) {
        let s = Scenario::new(n, m, snr, d0, Distortion::Hamming).unwrap();
        let back: Scenario = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(s, back);
    }

    #[test]
    fn signal_model_round_trips(alpha in 0.001f64..0.5, s1 in 0.1f64..10.0, frac in 0.0f64..1.0) {
        let m = SignalModel::sparse_gaussian(alpha, s1, s1 * frac).unwrap();
        let back: SignalModel = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn ensemble_spec_round_trips(beta in 0.01f64..1.0, l in 1usize..64, d in 0.0f64..1.0) {
        for spec in [
            EnsembleSpec::gaussian_diluted(beta),
            EnsembleSpec::zero_one_random(beta),
            EnsembleSpec::toeplitz_fir(l, d),
        ] {
            let back: EnsembleSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
            prop_assert_eq!(spec, back);
        }
    }

    #[test]
    fn binary_entropy_is_symmetric(p in 0.0f64..=1.0) {
        let h = binary_entropy(p).unwrap();
        let h_mirror = binary_entropy(1.0 - p).unwrap();
        prop_assert!((h - h_mirror).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&h));
    }

    #[test]
    fn binary_entropy_matches_pmf_entropy(p in 1e-6f64..1.0) {
        let h = binary_entropy(p).unwrap();
        let h_pmf = entropy_pmf(&[p, 1.0 - p]).unwrap();
        prop_assert!((h - h_pmf).abs() <= 1e-12, "p={p}: {h} vs {h_pmf}");
    }

    // clamping: every probability-valued bound stays in [0, 1] for arbitrary
    // in-domain arguments, including hostile mutual-information values
    #[test]
    fn fano_outputs_are_probabilities(
        n in 1usize..10_000,
        h in 0.0f64..1.0,
        d0_frac in 0.0f64..1.0,
        mi in 0.0f64..1e6,
        rate in 0.01f64..10.0,
        k in 0.0f64..2.0,
    ) {
        let r = fano_lb_finite_n(n, h, 2, d0_frac * 0.5, mi);
        if r.valid {
            assert_probability(r.finite(), "fano_lb_finite_n");
        }
        assert_probability(fano_lb_asymptotic(rate, k, mi).finite(), "fano_lb_asymptotic");
        if h > 0.0 {
            assert_probability(fano_lb_exact_recovery(n, h, mi).finite(), "fano_lb_exact_recovery");
        }
        assert_probability(sign_pattern_error_lb(n, h * n as f64, mi).finite(), "sign_pattern_error_lb");
    }

    // degenerate d0 = alpha: zero denominator must surface as Unbounded, not
    // NaN or infinity, and remain a valid in-regime result
    #[test]
    fn zero_rate_is_unbounded_not_nan(alpha in 0.01f64..0.5, snr in 0.0f64..1e3) {
        let b = ub_capacity_discrete_gaussian(alpha, snr, alpha);
        prop_assert!(b.is_valid());
        prop_assert!(b.result.value.is_unbounded());
        prop_assert!(b.numerator_bits.is_finite());

        let b = ub_capacity_diversity(alpha, 0.5, snr, alpha, 64);
        prop_assert!(b.is_valid());
        prop_assert!(b.result.value.is_unbounded());
    }

    #[test]
    fn capacity_bounds_never_nan(
        alpha in 0.01f64..0.5,
        snr in 0.0f64..1e3,
        d0_frac in 0.0f64..1.0,
        n in 2usize..500,
    ) {
        let d0 = alpha * d0_frac;
        for b in [
            ub_capacity_discrete_gaussian(alpha, snr, d0),
            ub_capacity_diversity(alpha, 0.3, snr, d0, n),
            lb_capacity_discrete(alpha, 2, snr, d0.max(1e-9)),
        ] {
            if b.is_valid() {
                if let Some(v) = b.value() {
                    prop_assert!(v.is_finite() && v >= 0.0, "{:?}", b);
                }
            }
        }
    }

    #[test]
    fn derived_counts_clamp(ratio in 0.0f64..1.5, n in 1usize..100_000) {
        let k = derived_count(ratio, n);
        prop_assert!((1..=n).contains(&k));
    }

    // overlap distribution: normalization and the hypergeometric mean k l / n
    // hold up to n = 10^4
    #[test]
    fn overlap_pmf_mean_and_mass(n in 2usize..10_000, kf in 0.01f64..1.0, lf in 0.01f64..1.0) {
        let k = derived_count(kf, n);
        let l = derived_count(lf, n);
        let d = overlap_pmf(n, k, l).unwrap();
        let mass: f64 = d.pmf.iter().sum();
        prop_assert!((mass - 1.0).abs() <= 1e-12);
        let expected = k as f64 * l as f64 / n as f64;
        let tol = 1e-9 * expected.max(1.0);
        prop_assert!((d.mean() - expected).abs() <= tol, "mean {} vs {}", d.mean(), expected);
    }

    // mixture rate-distortion is continuous where its two branches meet
    #[test]
    fn rd_mixture_continuous_at_branch_point(
        alpha in 0.05f64..0.95,
        s0 in 0.01f64..1.0,
        extra in 0.01f64..10.0,
    ) {
        let s1 = s0 + extra;
        let eps = 1e-9 * s0;
        let below = rd_mixture_gaussian(alpha, s1, s0, s0 - eps).unwrap();
        let above = rd_mixture_gaussian(alpha, s1, s0, s0 + eps).unwrap();
        prop_assert!((below - above).abs() <= 1e-6, "jump {} at D = {s0}", (below - above).abs());
    }
}

/// Counting oracle: overlap pmf by enumerating every l-subset against a fixed
/// k-subset. Exact small-integer arithmetic, independent of the log-gamma
/// evaluation under test.
fn overlap_counts(n: usize, k: usize, l: usize) -> Vec<(usize, u64)> {
    let mut counts = std::collections::BTreeMap::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != l {
            continue;
        }
        let overlap = (mask & ((1u32 << k) - 1)).count_ones() as usize;
        *counts.entry(overlap).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

#[test]
fn overlap_pmf_matches_counting_oracle() {
    for n in 1..=12usize {
        for k in 1..=n {
            for l in 1..=n {
                let d = overlap_pmf(n, k, l).unwrap();
                let counts = overlap_counts(n, k, l);
                let total: u64 = counts.iter().map(|&(_, c)| c).sum();
                assert_eq!(counts.first().unwrap().0, d.j_min, "n={n} k={k} l={l}");
                assert_eq!(counts.len(), d.pmf.len(), "n={n} k={k} l={l}");
                for (&(j, c), &p) in counts.iter().zip(&d.pmf) {
                    let exact = c as f64 / total as f64;
                    assert!(
                        (p - exact).abs() <= 1e-12 * exact.max(1e-300),
                        "n={n} k={k} l={l} j={j}: {p} vs {exact}"
                    );
                }
            }
        }
    }
}

#[test]
fn simulation_report_round_trips() {
    use sensecap::simulator::{run_simulation, SimulationConfig, SimulationReport};
    let config = SimulationConfig {
        scenario: Scenario::new(8, 16, 10.0, 0.0, Distortion::Hamming).unwrap(),
        model: SignalModel::bernoulli(0.5).unwrap(),
        ensemble: EnsembleSpec::gaussian_dense(),
        trials: 64,
        seed: 11,
        fixed_matrix: false,
    };
    let report = run_simulation(&config).unwrap();
    let back: SimulationReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, back);
}

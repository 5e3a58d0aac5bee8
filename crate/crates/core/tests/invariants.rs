use ncmd_core::diagnostics::{judge, ldp_probe, Regime, Tolerances};
use ncmd_core::estimators::{mc_count, stable_log_complement};
use ncmd_core::families::coupon::{coupon_cdf_dp, coupon_cdf_inclusion_exclusion, coupon_ie_raw, coupon_log_cdf_table};
use ncmd_core::families::Side;
use ncmd_core::rng::TrialRng;
use ncmd_core::scalings::{validate, ScalingFamily};
use ncmd_core::{Distribution, FamilySpec};
use proptest::prelude::*;

fn dists() -> Vec<Distribution> {
    ["exponential:1.5", "uniform01", "weibull:2", "weibull:0.7", "gamma:3", "std_normal", "logistic", "lognormal"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn families() -> Vec<FamilySpec> {
    [
        "classical:sigma=1.5",
        "minima:exponential:1",
        "minima:uniform01",
        "gumbel_maxima:weibull:2",
        "gumbel_maxima:std_normal",
        "coupon",
        "replacement:exponential:1,exponential:2,t=1,beta=0.4",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn log_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        m
    } else {
        m + ((a - m).exp() + (b - m).exp()).ln()
    }
}

proptest! {
    #[test]
    fn cdf_and_sf_partition_unity(i in 0usize..8, u in 0.001f64..0.999) {
        let d = dists()[i];
        let x = d.quantile(u).unwrap();
        let total = log_add(d.log_cdf(x), d.log_sf(x));
        prop_assert!(total.abs() < 1e-12, "{d} at {x}: {total}");
    }

    #[test]
    fn log_sf_is_non_increasing(i in 0usize..8, u in 0.001f64..0.998, du in 0.0f64..0.001) {
        let d = dists()[i];
        let a = d.quantile(u).unwrap();
        let b = d.quantile(u + du).unwrap();
        prop_assert!(d.log_sf(b) <= d.log_sf(a) + 1e-15);
    }

    #[test]
    fn complement_is_a_complement(lp in -700.0f64..-1e-12) {
        let c = stable_log_complement(lp).unwrap();
        prop_assert!((log_add(lp, c)).abs() < 1e-13);
    }

    #[test]
    fn uniforms_stay_open(seed in any::<u64>(), trial in any::<u64>()) {
        let mut r = TrialRng::new(seed, trial);
        for _ in 0..16 {
            let u = r.uniform();
            prop_assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn trial_streams_are_replayable(seed in any::<u64>(), trial in any::<u64>()) {
        let mut a = TrialRng::new(seed, trial);
        let mut b = TrialRng::new(seed, trial);
        for _ in 0..8 {
            prop_assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn mc_counts_add_over_partitions(split in 0u64..2000, seed in any::<u64>()) {
        let fam: FamilySpec = "gumbel_maxima:weibull:2".parse().unwrap();
        let whole = mc_count(&fam, 50, 0.1, Side::Upper, seed, 0..2000).unwrap();
        let a = mc_count(&fam, 50, 0.1, Side::Upper, seed, 0..split).unwrap();
        let b = mc_count(&fam, 50, 0.1, Side::Upper, seed, split..2000).unwrap();
        prop_assert_eq!(whole, a + b);
    }

    #[test]
    fn coupon_dp_matches_inclusion_exclusion(n in 1u64..=30, k in 0u64..=19) {
        let m = n + k * n;
        let dp = coupon_cdf_dp(n, m).unwrap();
        // the guarded evaluator refuses ill-conditioned cells; the raw sum covers them
        let ie = match coupon_cdf_inclusion_exclusion(n, m) {
            Ok(v) => v,
            Err(_) => coupon_ie_raw(n, m).0,
        };
        prop_assert!((dp - ie).abs() < 1e-9, "n={n} m={m}: {dp} vs {ie}");
    }

    #[test]
    fn power_scalings_between_the_boundaries_are_admissible(g in 0.05f64..0.95, i in 0usize..7) {
        let fam = &families()[i];
        let lo = fam.min_n().max(10);
        let rep = validate(&ScalingFamily::power(g).unwrap(), fam, &[lo, lo * 1_000_000]).unwrap();
        prop_assert!(rep.accepted(), "{fam} pow:{g}: {:?}", rep.failures());
    }

    #[test]
    fn verdict_ignores_row_order(perm in Just(()).prop_perturb(|_, mut rng| rng.next_u64())) {
        let fam: FamilySpec = "replacement:exponential:1,exponential:2,t=1,beta=0.4".parse().unwrap();
        let r = ldp_probe(&fam, &[-0.5, 0.5, 1.5], &[10, 100, 1000, 10_000], &Tolerances::default()).unwrap();
        let mut rows = r.rows.clone();
        let k = rows.len();
        rows.rotate_left((perm % k as u64) as usize);
        rows.swap(0, (perm as usize / 7) % k);
        prop_assert_eq!(judge(Regime::Ld, &rows, &r.tolerances).0, r.verdict);
    }
}

#[test]
fn coupon_cdf_table_is_monotone() {
    let t = coupon_log_cdf_table(40, 2000).unwrap();
    assert!(t.windows(2).all(|w| w[1] >= w[0]));
    assert!(t[..40].iter().all(|v| *v == f64::NEG_INFINITY));
    assert!(t[2000].abs() < 1e-12);
}

#[test]
fn rate_functions_have_a_unique_zero_and_one_sided_monotonicity() {
    let grid: Vec<f64> = (-40..=40).filter(|k| *k != 0).map(|k| k as f64 * 0.1).collect();
    for fam in families() {
        for rate in [fam.rate_ld(), fam.rate_md()] {
            rate.check_shape(&grid).unwrap_or_else(|e| panic!("{fam}: {e}"));
        }
    }
}

#[test]
fn family_specs_round_trip() {
    for fam in families() {
        let s = fam.to_string();
        let back: FamilySpec = s.parse().unwrap();
        assert_eq!(back.to_string(), s);
    }
}

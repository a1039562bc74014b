//! Property-based invariants of the bounds, moments and harness.

use proptest::prelude::*;

use sconvex_quad::bounds::{
    bound_holder_concave, bound_holder_convex, bound_power_mean, classify_case, holder_moments, kernel_moments,
    rule_error,
};
use sconvex_quad::means::{arith, p_log};
use sconvex_quad::oracle::integrate;
use sconvex_quad::verify::csv::fmt_f64;
use sconvex_quad::verify::{fuzz_verify, FuzzConfig};
use sconvex_quad::zoo::{certified_instance, Family};
use sconvex_quad::{ConvexityClass, DerivativeData, Interval, RuleParams};

fn unit() -> Interval {
    Interval::new(0.0, 1.0).unwrap()
}

fn data(a: f64, b: f64, m: f64) -> DerivativeData {
    DerivativeData::new(a, b).unwrap().with_mix(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn moments_nonnegative_on_applicable_branches(al in 0.0..=1.0f64, l in 0.0..=1.0f64, s in 0.01..=1.0f64, p in 1.01..5.0f64) {
        let params = RuleParams::new(al, l).unwrap();
        let c = classify_case(&params);
        let left = kernel_moments(&params, s).unwrap();
        let right = kernel_moments(&params.mirrored(), s).unwrap();
        let hl = holder_moments(&params, p).unwrap();
        let hr = holder_moments(&params.mirrored(), p).unwrap();
        for case in c.applicable {
            let (lb, rb) = case.branches();
            for v in [left.weight(lb), left.t_moment(lb), left.one_minus_t_moment(lb), hl.on(lb),
                      right.weight(rb), right.t_moment(rb), right.one_minus_t_moment(rb), hr.on(rb)] {
                prop_assert!(v >= -1e-13, "{v} at {case:?}");
            }
        }
    }

    #[test]
    fn bound_value_is_recombined_components(al in 0.0..=1.0f64, l in 0.0..=1.0f64, s in 0.01..=1.0f64,
                                            q in 1.0..4.0f64, da in 0.0..5.0f64, db in 0.0..5.0f64, dm in 0.0..5.0f64) {
        let params = RuleParams::new(al, l).unwrap();
        let cls = ConvexityClass::convex(s, q).unwrap();
        let d = data(da, db, dm);
        let b = bound_power_mean(&params, &cls, &d, &unit()).unwrap();
        prop_assert!(b.value >= 0.0);
        prop_assert!((b.recombine() - b.value).abs() <= 1e-15 * b.value.max(1.0));
        let min = b.candidates.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(min, b.value);
        if q > 1.0 {
            let h = bound_holder_convex(&params, &cls, &d, &unit()).unwrap();
            prop_assert!(h.value >= 0.0);
            prop_assert!((h.recombine() - h.value).abs() <= 1e-15 * h.value.max(1.0));
        }
    }

    #[test]
    fn reflection_swaps_endpoint_data(al in 0.0..=1.0f64, l in 0.0..=1.0f64, s in 0.01..=1.0f64,
                                      q in 1.0..4.0f64, da in 0.0..5.0f64, db in 0.0..5.0f64, dm in 0.0..5.0f64) {
        // f(a + b - x) under (1 - alpha, lambda) has the same error as f under (alpha, lambda)
        let p = RuleParams::new(al, l).unwrap();
        let cls = ConvexityClass::convex(s, q).unwrap();
        let x = bound_power_mean(&p, &cls, &data(da, db, dm), &unit()).unwrap().value;
        let y = bound_power_mean(&p.mirrored(), &cls, &data(db, da, dm), &unit()).unwrap().value;
        prop_assert!((x - y).abs() <= 1e-12 * x.max(1e-12), "{x} vs {y}");
    }

    #[test]
    fn continuous_across_case_boundary(l in 0.05..=1.0f64, s in 0.05..=1.0f64, q in 1.0..3.0f64,
                                       da in 0.0..5.0f64, db in 0.0..5.0f64) {
        // alpha lambda = 1 - alpha at alpha* = 1 / (1 + lambda)
        let star = 1.0 / (1.0 + l);
        let cls = ConvexityClass::convex(s, q).unwrap();
        let d = data(da, db, 1.0);
        let at = |al: f64| bound_power_mean(&RuleParams::new(al, l).unwrap(), &cls, &d, &unit()).unwrap().value;
        let (below, on, above) = (at(star - 1e-9), at(star), at((star + 1e-9).min(1.0)));
        let scale = on.max(1e-6);
        prop_assert!((below - on).abs() <= 1e-6 * scale, "{below} {on}");
        prop_assert!((above - on).abs() <= 1e-6 * scale, "{above} {on}");
    }

    #[test]
    fn certified_functions_respect_bounds(al in 0.0..=1.0f64, l in 0.0..=1.0f64, s in 0.1..=1.0f64,
                                          a in 0.2..4.0f64, w in 0.1..4.0f64) {
        let iv = Interval::new(a, a + w).unwrap();
        let params = RuleParams::new(al, l).unwrap();
        for (fam, q) in [(Family::Square, 1.0), (Family::Exp, 2.0), (Family::PowerS1, 1.0)] {
            if !fam.supports(s, q) {
                continue;
            }
            let f = certified_instance(fam, s, q).unwrap();
            let cls = ConvexityClass::convex(s, q).unwrap();
            let d = DerivativeData::sample(|x| f.deriv(x).abs(), &params, &iv).unwrap();
            let e = rule_error(&f, &params, &iv).unwrap().abs();
            let b = bound_power_mean(&params, &cls, &d, &iv).unwrap().value;
            prop_assert!(e <= b + 1e-8 * b.max(1.0), "{} |I_f| = {e} > {b}", f.id());
        }
    }

    #[test]
    fn sqrt_derivative_respects_concave_bound(al in 0.0..=1.0f64, l in 0.0..=1.0f64, a in 0.1..4.0f64, w in 0.1..4.0f64) {
        let iv = Interval::new(a, a + w).unwrap();
        let params = RuleParams::new(al, l).unwrap();
        let f = certified_instance(Family::SqrtDeriv, 1.0, 2.0).unwrap();
        let cls = ConvexityClass::concave(1.0, 2.0).unwrap();
        let d = DerivativeData::sample(|x| f.deriv(x).abs(), &params, &iv).unwrap();
        let e = rule_error(&f, &params, &iv).unwrap().abs();
        let b = bound_holder_concave(&params, &cls, &d, &iv).unwrap().value;
        prop_assert!(e <= b + 1e-8 * b.max(1.0), "|I_f| = {e} > {b}");
    }

    #[test]
    fn simpson_integrates_cubics(c in prop::array::uniform4(-5.0..5.0f64), a in -3.0..3.0f64, w in 0.01..4.0f64) {
        let f = |x: f64| c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        let big_f = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
        let r = integrate(f, a, a + w, 1e-12).unwrap();
        let exact = big_f(a + w) - big_f(a);
        prop_assert!((r.value - exact).abs() <= 1e-11 * exact.abs().max(1.0));
    }

    #[test]
    fn first_log_mean_is_arithmetic(a in 0.01..10.0f64, w in 0.001..10.0f64) {
        let b = a + w;
        let l1 = p_log(a, b, 1.0).unwrap();
        prop_assert!((l1 - arith(a, b)).abs() <= 1e-13 * b);
    }

    #[test]
    fn log_mean_increases_in_b(a in 0.01..5.0f64, w in 0.01..5.0f64, p in 0.1..4.0f64) {
        let b = a + w;
        prop_assert!(p_log(a, b + 0.01, p).unwrap() > p_log(a, b, p).unwrap());
    }

    #[test]
    fn csv_floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fuzz_is_deterministic_per_seed(seed in any::<u64>()) {
        let cfg = FuzzConfig { trials: 200, seed, ..Default::default() };
        let a = fuzz_verify(&cfg).unwrap();
        let b = fuzz_verify(&cfg).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.passed(), "{:?}", a.violations);
    }
}

//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sconvex_quad::bounds::{bound_power_mean, holder_moments, kernel_moments, named, Branch};
use sconvex_quad::cli;
use sconvex_quad::means::{proposition_holder_check, proposition_power_mean_check};
use sconvex_quad::oracle::{
    hermite_hadamard_check, lemma_identity_residual, moment_integral_numeric, moment_integral_numeric_right,
    MomentKind,
};
use sconvex_quad::verify::{fuzz_verify, improvement_coefficients, reduction_check, tightness_compare, CompareGrid, FuzzConfig};
use sconvex_quad::zoo::{self, make_power_s, Family};
use sconvex_quad::{ConvexityClass, DerivativeData, Interval, RuleParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(limit: Duration, started: Instant) -> Result<Duration, String> {
    let took = started.elapsed();
    if took > limit {
        return Err(format!("took {took:.2?}, limit {limit:?}"));
    }
    Ok(took)
}

fn branches(c: f64, m: f64) -> Vec<Branch> {
    let mut v = Vec::new();
    if c <= m + 1e-14 {
        v.push(Branch::Inner);
    }
    if c >= m - 1e-14 {
        v.push(Branch::Outer);
    }
    v
}

fn moment_oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut worst = 0.0f64;
    let e = |e: sconvex_quad::Error| e.to_string();
    for i in 0..=20 {
        for j in 0..=20 {
            let p = RuleParams::new(i as f64 * 0.05, j as f64 * 0.05).map_err(e)?;
            let m = p.mirrored();
            let left = branches(p.alpha() * p.lambda(), 1.0 - p.alpha());
            let right = branches(m.alpha() * m.lambda(), 1.0 - m.alpha());
            let g = moment_integral_numeric(MomentKind::Abs, &p, 0.0).map_err(e)?;
            let gr = moment_integral_numeric_right(MomentKind::Abs, &p, 0.0).map_err(e)?;
            for k in 1..=10 {
                let s = k as f64 / 10.0;
                let lm = kernel_moments(&p, s).map_err(e)?;
                let rm = kernel_moments(&m, s).map_err(e)?;
                let ts = moment_integral_numeric(MomentKind::AbsTs, &p, s).map_err(e)?;
                let oms = moment_integral_numeric(MomentKind::AbsOneMinusTs, &p, s).map_err(e)?;
                let rts = moment_integral_numeric_right(MomentKind::AbsTs, &p, s).map_err(e)?;
                let roms = moment_integral_numeric_right(MomentKind::AbsOneMinusTs, &p, s).map_err(e)?;
                for &b in &left {
                    worst = worst.max((lm.weight(b) - g).abs());
                    worst = worst.max((lm.t_moment(b) - ts).abs());
                    worst = worst.max((lm.one_minus_t_moment(b) - oms).abs());
                }
                for &b in &right {
                    worst = worst.max((rm.weight(b) - gr).abs());
                    worst = worst.max((rm.one_minus_t_moment(b) - rts).abs());
                    worst = worst.max((rm.t_moment(b) - roms).abs());
                }
            }
            for pp in [1.5, 2.0, 3.0] {
                let h = holder_moments(&p, pp).map_err(e)?;
                let hr = holder_moments(&m, pp).map_err(e)?;
                let n = moment_integral_numeric(MomentKind::AbsPow, &p, pp).map_err(e)?;
                let nr = moment_integral_numeric_right(MomentKind::AbsPow, &p, pp).map_err(e)?;
                for &b in &left {
                    worst = worst.max((h.on(b) / (pp + 1.0) - n).abs());
                }
                for &b in &right {
                    worst = worst.max((hr.on(b) / (pp + 1.0) - nr).abs());
                }
            }
        }
    }
    let simpson = RuleParams::SIMPSON;
    let m = kernel_moments(&simpson, 1.0).map_err(e)?;
    let h = holder_moments(&simpson, 2.0).map_err(e)?;
    let spots = [
        ("gamma2", m.gamma2, 5.0 / 72.0),
        ("c1", m.c1, 29.0 / 1296.0),
        ("eps1", h.eps1, 1.0 / 24.0),
    ];
    for (name, got, want) in spots {
        if (got - want).abs() > 1e-12 {
            return Err(format!("{name} = {got:e}, expected {want:e}"));
        }
    }
    let took = within(Duration::from_secs(10), started)?;
    if worst > 1e-10 {
        return Err(format!("max discrepancy {worst:e} > 1e-10"));
    }
    Ok(format!("max discrepancy {worst:.1e}, spot values exact, {took:.2?}"))
}

fn soundness_fuzz() -> Outcome {
    let started = Instant::now();
    let r = fuzz_verify(&FuzzConfig::default()).map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(30), started)?;
    if r.trials_run != 10_000 {
        return Err(format!("ran {} trials", r.trials_run));
    }
    if !r.errors.is_empty() {
        return Err(format!("{} trials failed to evaluate, first: {:?}", r.errors.len(), r.errors[0]));
    }
    if let Some(v) = r.violations.first() {
        return Err(format!("{} violations, first at trial {}: {v:?}", r.violations.len(), v.trial));
    }
    let max = r.tightness.map_or(0.0, |t| t.max);
    Ok(format!("10000 trials, 0 violations, max |I_f|/bound {max:.4}, {took:.2?}"))
}

fn convex_reduction() -> Outcome {
    let r = reduction_check().map_err(|e| e.to_string())?;
    let group: Vec<_> = r.group("convex-reduction").collect();
    if group.len() != 243 {
        return Err(format!("expected 243 grid points, got {}", group.len()));
    }
    let worst = group.iter().map(|c| c.rel_diff()).fold(0.0, f64::max);
    match group.iter().find(|c| !c.holds()) {
        Some(c) => Err(format!("mismatch {c:?}")),
        None => Ok(format!("243 grid points, max rel diff {worst:.1e}")),
    }
}

fn specializations() -> Outcome {
    let r = reduction_check().map_err(|e| e.to_string())?;
    let groups = [
        "power-mean/simpson",
        "power-mean/midpoint",
        "power-mean/trapezoid",
        "power-mean/trapezoid-printed",
        "holder-convex/simpson",
        "holder-convex/simpson-prior",
        "holder-convex/midpoint",
        "holder-convex/trapezoid",
        "holder-concave/trapezoid",
        "holder-concave/midpoint",
        "holder-concave/trapezoid-unit",
        "holder-concave/midpoint-unit",
    ];
    let mut total = 0;
    let mut worst = 0.0f64;
    for g in groups {
        let checks: Vec<_> = r.checks.iter().filter(|c| c.name == g).collect();
        if checks.is_empty() {
            return Err(format!("group {g} is empty"));
        }
        if let Some(c) = checks.iter().find(|c| !c.holds()) {
            return Err(format!("{g}: {c:?}"));
        }
        total += checks.len();
        worst = checks.iter().map(|c| c.rel_diff()).fold(worst, f64::max);
    }
    // the far-endpoint coefficient of the printed trapezoid form only agrees at s = 1
    let cls = ConvexityClass::convex(0.5, 1.0).map_err(|e| e.to_string())?;
    let d = DerivativeData::new(1.0, 2.0).map_err(|e| e.to_string())?;
    let iv = Interval::new(0.0, 1.0).map_err(|e| e.to_string())?;
    let general = bound_power_mean(&RuleParams::TRAPEZOID, &cls, &d, &iv).map_err(|e| e.to_string())?.value;
    let printed = named::trapezoid_power_mean_printed(&cls, &d, &iv).map_err(|e| e.to_string())?.value;
    println!("    info: printed trapezoid form at s=0.5: {printed:.6} vs general {general:.6}");
    Ok(format!("{total} equalities in {} groups, max rel diff {worst:.1e}", groups.len()))
}

fn identity_residual() -> Outcome {
    let mut functions = zoo::catalog().map_err(|e| e.to_string())?;
    for fam in Family::ALL {
        for (s, q) in [(0.3, 1.0), (0.5, 2.0), (1.0, 1.5)] {
            if fam.supports(s, q) {
                functions.push(zoo::certified_instance(fam, s, q).map_err(|e| e.to_string())?);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for f in &functions {
        let w = zoo::sample_window(f);
        for _ in 0..100 {
            let p = RuleParams::new(rng.gen(), rng.gen()).map_err(|e| e.to_string())?;
            let a = rng.gen_range(w.a()..w.b() - 0.1);
            let b = rng.gen_range(a + 0.1..=w.b());
            let iv = Interval::new(a, b).map_err(|e| e.to_string())?;
            let r = lemma_identity_residual(f, &p, &iv).map_err(|e| format!("{}: {e}", f.id()))?;
            if r.is_nan() || r > 1e-8 {
                return Err(format!("{} at {p:?} on {iv:?}: residual {r:e}", f.id()));
            }
            worst = worst.max(r);
        }
    }
    Ok(format!("{} functions x 100 configurations, max residual {worst:.1e}", functions.len()))
}

fn hermite_hadamard_sharpness() -> Outcome {
    let f = make_power_s(1.0, 0.5).map_err(|e| e.to_string())?;
    let iv = Interval::new(0.0, 1.0).map_err(|e| e.to_string())?;
    let hh = hermite_hadamard_check(&f, 0.5, &iv).map_err(|e| e.to_string())?;
    if (hh.mid - 2.0 / 3.0).abs() > 1e-12 || (hh.rhs - 2.0 / 3.0).abs() > 1e-12 {
        return Err(format!("mean {} and endpoint side {} should both be 2/3", hh.mid, hh.rhs));
    }
    if (hh.lhs - 0.5).abs() > 1e-12 || !hh.holds(0.0) {
        return Err(format!("midpoint side {} should be 1/2 and below the mean", hh.lhs));
    }
    Ok(format!("1/2 <= {:.15} = {:.15}", hh.mid, hh.rhs))
}

fn improvement() -> Outcome {
    let coeffs = improvement_coefficients(100);
    if let Some(c) = coeffs.iter().find(|c| !c.holds()) {
        return Err(format!("coefficient inequality fails at {c:?}"));
    }
    let rows = tightness_compare(&CompareGrid::default()).map_err(|e| e.to_string())?;
    let anomalies: Vec<_> = rows.iter().filter(|r| r.anomaly).collect();
    for a in &anomalies {
        println!("    anomaly: {} s={} q={} new={:e} earlier={:e}", a.label, a.s, a.q, a.bound_new, a.bound_classical);
    }
    let worst = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(format!(
        "100 coefficient checks hold; {} comparisons, {} anomalies, max new/earlier {worst:.4}",
        rows.len(),
        anomalies.len()
    ))
}

fn propositions() -> Outcome {
    let started = Instant::now();
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut n = 0;
    for (a, b) in [(1.0, 2.0), (1.0, 3.0), (0.5, 4.0)] {
        for al in grid {
            for l in grid {
                let p = RuleParams::new(al, l).map_err(|e| e.to_string())?;
                for s in [0.1, 0.2, 0.3, 0.45] {
                    for q in [1.0, 1.5, 2.0, 3.0] {
                        let r = proposition_power_mean_check(a, b, &p, s, q).map_err(|e| e.to_string())?;
                        if !r.holds {
                            return Err(format!("power-mean form fails at a={a} b={b} {p:?} s={s} q={q}: {r:?}"));
                        }
                        n += 1;
                        if q > 1.0 {
                            let r = proposition_holder_check(a, b, &p, s, q).map_err(|e| e.to_string())?;
                            if !r.holds {
                                return Err(format!("Hoelder form fails at a={a} b={b} {p:?} s={s} q={q}: {r:?}"));
                            }
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    let took = within(Duration::from_secs(10), started)?;
    Ok(format!("{n} grid points hold, {took:.2?}"))
}

fn determinism() -> Outcome {
    let args = ["sconvex-quad", "verify", "--trials", "1000", "--seed", "7", "--format", "csv"];
    let run = || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cli::run(args, &mut out, &mut err);
        (code, out, err)
    };
    let (c1, o1, e1) = run();
    let (c2, o2, _) = run();
    if c1 != 0 || c2 != 0 {
        return Err(format!("exit codes {c1}, {c2}: {}", String::from_utf8_lossy(&e1)));
    }
    if o1.is_empty() || o1 != o2 {
        return Err("outputs differ".into());
    }
    Ok(format!("{} identical bytes ({} rows)", o1.len(), o1.iter().filter(|&&c| c == b'\n').count() - 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("moment closed forms match quadrature", moment_oracle_equivalence),
        ("soundness fuzz", soundness_fuzz),
        ("s = 1 reduction to the convex bound", convex_reduction),
        ("rule specializations", specializations),
        ("kernel identity residual", identity_residual),
        ("Hermite-Hadamard sharpness", hermite_hadamard_sharpness),
        ("improvement over earlier bounds", improvement),
        ("mean inequalities", propositions),
        ("CSV determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

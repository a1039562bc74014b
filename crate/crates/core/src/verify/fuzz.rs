//! Seeded soundness fuzzing of `|I_f| <= bound` over certified test functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{method_bound, rule_error, Method};
use crate::error::{Error, Result};
use crate::params::{ConvexityClass, ConvexityMode, DerivativeData, Interval, RuleParams, MIN_S};
use crate::zoo::{certified_instance, Family, SAMPLE_HI, SAMPLE_LO};

/// Smallest sampled interval length.
pub const MIN_WIDTH: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub alpha_range: (f64, f64),
    pub lambda_range: (f64, f64),
    /// Range for `s` under s-convex methods; s-concave methods always use
    /// `s = 1`, the only value with positive certified members.
    pub s_range: (f64, f64),
    pub q_set: Vec<f64>,
    /// Family ids; empty means every family some requested method accepts.
    pub function_ids: Vec<String>,
    pub methods: Vec<Method>,
    pub tol: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 10_000,
            seed: 7,
            alpha_range: (0.0, 1.0),
            lambda_range: (0.0, 1.0),
            s_range: (0.05, 1.0),
            q_set: vec![1.0, 1.5, 2.0, 3.0],
            function_ids: Vec::new(),
            methods: vec![Method::PowerMean, Method::HolderConvex, Method::HolderConcave],
            tol: 1e-8,
        }
    }
}

fn method_mode(m: Method) -> Option<ConvexityMode> {
    match m {
        Method::PowerMean | Method::HolderConvex => Some(ConvexityMode::SConvex),
        Method::HolderConcave => Some(ConvexityMode::SConcave),
        _ => None,
    }
}

fn admissible_q(m: Method, fam: Family, q: f64) -> bool {
    let s = if fam.mode() == ConvexityMode::SConcave { 1.0 } else { 0.5 };
    let hoelder = !matches!(m, Method::PowerMean);
    fam.supports(s, q) && (!hoelder || q > 1.0)
}

/// One (method, family) combination with the q values it may use.
#[derive(Debug, Clone, PartialEq)]
pub struct Pairing {
    pub method: Method,
    pub family: Family,
    pub q_values: Vec<f64>,
}

fn check_range(name: &str, (lo, hi): (f64, f64), min: f64, max: f64) -> Result<()> {
    if !(lo <= hi && lo >= min && hi <= max) {
        return Err(Error::Config(format!("{name} range [{lo}, {hi}] must lie within [{min}, {max}]")));
    }
    Ok(())
}

impl FuzzConfig {
    /// Validates the configuration and lists the combinations to cycle through.
    pub fn pairings(&self) -> Result<Vec<Pairing>> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tol must be finite and >= 0, got {}", self.tol)));
        }
        check_range("alpha", self.alpha_range, 0.0, 1.0)?;
        check_range("lambda", self.lambda_range, 0.0, 1.0)?;
        check_range("s", self.s_range, MIN_S, 1.0)?;
        if let Some(q) = self.q_set.iter().find(|q| !(**q >= 1.0 && q.is_finite())) {
            return Err(Error::Config(format!("q values must be >= 1, got {q}")));
        }
        if let Some(m) = self.methods.iter().find(|m| method_mode(**m).is_none()) {
            return Err(Error::Config(format!("{m} is not one of the general estimates")));
        }
        let explicit = !self.function_ids.is_empty();
        let families: Vec<Family> = if explicit {
            self.function_ids.iter().map(|id| Family::from_id(id)).collect::<Result<_>>()?
        } else {
            Family::ALL.to_vec()
        };
        let mut out = Vec::new();
        for fam in families {
            let mut found = false;
            for &m in &self.methods {
                if method_mode(m) != Some(fam.mode()) {
                    continue;
                }
                let q_values: Vec<f64> = self.q_set.iter().copied().filter(|&q| admissible_q(m, fam, q)).collect();
                if !q_values.is_empty() {
                    found = true;
                    out.push(Pairing { method: m, family: fam, q_values });
                }
            }
            if explicit && !found {
                return Err(Error::Config(format!(
                    "{} ({}) has no certificate matching the requested methods and q values",
                    fam.id(),
                    fam.mode()
                )));
            }
        }
        if out.is_empty() {
            return Err(Error::Config("no (method, function) combination is certified".into()));
        }
        Ok(out)
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub method: Method,
    pub fn_id: String,
    pub alpha: f64,
    pub lambda: f64,
    pub s: f64,
    pub q: f64,
    pub a: f64,
    pub b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub violation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightnessStats {
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub trial: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub trials_run: usize,
    /// Successful trials in trial order.
    pub records: Vec<TrialRecord>,
    /// Sorted by trial index.
    pub violations: Vec<Violation>,
    /// Trials whose oracle or bound evaluation failed.
    pub errors: Vec<(usize, String)>,
    pub tightness: Option<TightnessStats>,
    /// The trial with the largest `lhs / rhs`.
    pub worst_case: Option<TrialRecord>,
}

impl VerificationReport {
    /// No trial exceeded its bound. Per-trial evaluation failures are
    /// reported in `errors` and do not count as violations.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn from_records(trials_run: usize, mut records: Vec<TrialRecord>, mut errors: Vec<(usize, String)>) -> Self {
        records.sort_by_key(|r| r.trial);
        errors.sort_by_key(|e| e.0);
        let violations = records
            .iter()
            .filter(|r| r.violation)
            .map(|r| Violation { trial: r.trial, lhs: r.lhs, rhs: r.rhs, gap: r.lhs - r.rhs })
            .collect();
        let mut ratios: Vec<f64> = records.iter().map(|r| r.ratio).collect();
        ratios.sort_by(f64::total_cmp);
        let tightness = (!ratios.is_empty()).then(|| TightnessStats {
            min: ratios[0],
            median: ratios[ratios.len() / 2],
            max: ratios[ratios.len() - 1],
        });
        let worst_case = records.iter().max_by(|x, y| x.ratio.total_cmp(&y.ratio)).cloned();
        VerificationReport { trials_run, records, violations, errors, tightness, worst_case }
    }
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

struct Sample {
    pairing: usize,
    alpha: f64,
    lambda: f64,
    s: f64,
    q: f64,
}

fn draw(cfg: &FuzzConfig, pairings: &[Pairing], trial: usize, rng: &mut ChaCha8Rng) -> Sample {
    let pairing = trial % pairings.len();
    let pr = &pairings[pairing];
    let (mut alpha, mut lambda) = (uniform(rng, cfg.alpha_range), uniform(rng, cfg.lambda_range));
    let clamp = |x: f64, (lo, hi): (f64, f64)| x.clamp(lo, hi);
    match trial % 100 {
        // corners carry the degenerate-node terms
        0 => {
            let k = (trial / 100) % 4;
            alpha = clamp(if k & 1 == 0 { 0.0 } else { 1.0 }, cfg.alpha_range);
            lambda = clamp(if k & 2 == 0 { 0.0 } else { 1.0 }, cfg.lambda_range);
        }
        // named rules, two of which sit on case boundaries
        50 => {
            let p = [RuleParams::MIDPOINT, RuleParams::TRAPEZOID, RuleParams::SIMPSON][(trial / 100) % 3];
            alpha = clamp(p.alpha(), cfg.alpha_range);
            lambda = clamp(p.lambda(), cfg.lambda_range);
        }
        _ => {}
    }
    let s = match pr.family.mode() {
        ConvexityMode::SConvex => uniform(rng, cfg.s_range),
        ConvexityMode::SConcave => 1.0,
    };
    let q = pr.q_values[rng.gen_range(0..pr.q_values.len())];
    Sample { pairing, alpha, lambda, s, q }
}

fn run_trial(cfg: &FuzzConfig, pairings: &[Pairing], trial: usize) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let smp = draw(cfg, pairings, trial, &mut rng);
    let pr = &pairings[smp.pairing];
    let f = certified_instance(pr.family, smp.s, smp.q)?;
    let (dlo, dhi) = f.domain();
    let (lo, hi) = (dlo.max(SAMPLE_LO), dhi.min(SAMPLE_HI));
    let a = rng.gen_range(lo..=hi - MIN_WIDTH);
    let b = rng.gen_range(a + MIN_WIDTH..=hi);
    let iv = Interval::nonneg(a, b)?;
    let params = RuleParams::new(smp.alpha, smp.lambda)?;
    let cls = ConvexityClass::new(smp.s, smp.q, pr.family.mode())?;
    let d = DerivativeData::sample(|x| f.deriv(x), &params, &iv)?;
    let lhs = rule_error(&f, &params, &iv)?.abs();
    let rhs = method_bound(pr.method, &params, &cls, &d, &iv)?.value;
    let ratio = if rhs > 0.0 {
        lhs / rhs
    } else if lhs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(TrialRecord {
        trial,
        method: pr.method,
        fn_id: f.id().to_string(),
        alpha: smp.alpha,
        lambda: smp.lambda,
        s: smp.s,
        q: smp.q,
        a,
        b,
        lhs,
        rhs,
        ratio,
        violation: lhs > rhs + cfg.tol,
    })
}

/// Runs the campaign. Every trial draws from its own ChaCha8 stream keyed
/// by `(seed, trial)`, so the report depends only on the configuration.
pub fn fuzz_verify(cfg: &FuzzConfig) -> Result<VerificationReport> {
    let pairings = cfg.pairings()?;
    let mut records = Vec::with_capacity(cfg.trials);
    let mut errors = Vec::new();
    for t in 0..cfg.trials {
        match run_trial(cfg, &pairings, t) {
            Ok(r) => records.push(r),
            Err(e) => errors.push((t, e.to_string())),
        }
    }
    Ok(VerificationReport::from_records(cfg.trials, records, errors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> FuzzConfig {
        FuzzConfig { trials, ..Default::default() }
    }

    #[test]
    fn small_campaign_is_clean_and_deterministic() {
        let a = fuzz_verify(&small(600)).unwrap();
        let b = fuzz_verify(&small(600)).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{:?}", a.violations.first());
        assert!(a.errors.is_empty(), "{:?}", a.errors.first());
        let t = a.tightness.unwrap();
        assert!(t.min >= 0.0 && t.max <= 1.0);
    }

    #[test]
    fn mismatched_certificate_is_a_config_error() {
        let cfg = FuzzConfig {
            function_ids: vec!["sqrt_deriv".into()],
            methods: vec![Method::PowerMean],
            ..small(1)
        };
        assert!(matches!(fuzz_verify(&cfg), Err(Error::Config(_))));
        let cfg = FuzzConfig { function_ids: vec!["nope".into()], ..small(1) };
        assert!(matches!(fuzz_verify(&cfg), Err(Error::UnknownFunction(_))));
    }

    #[test]
    fn pinned_simpson_square_trial() {
        let cfg = FuzzConfig {
            alpha_range: (0.5, 0.5),
            lambda_range: (1.0 / 3.0, 1.0 / 3.0),
            s_range: (1.0, 1.0),
            q_set: vec![1.0],
            function_ids: vec!["square".into()],
            methods: vec![Method::PowerMean],
            ..small(1)
        };
        let r = fuzz_verify(&cfg).unwrap();
        assert!(r.records[0].lhs < 1e-12 * r.records[0].b.powi(2));
        assert!(r.passed());
    }

    #[test]
    fn concave_trapezoid_ratio() {
        let cfg = FuzzConfig {
            alpha_range: (0.5, 0.5),
            lambda_range: (1.0, 1.0),
            q_set: vec![2.0],
            function_ids: vec!["sqrt_deriv".into()],
            methods: vec![Method::HolderConcave],
            ..small(20)
        };
        let r = fuzz_verify(&cfg).unwrap();
        assert!(r.passed());
        assert!(r.records.iter().all(|t| t.ratio > 0.0 && t.ratio < 1.0));
    }
}

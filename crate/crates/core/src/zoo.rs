//! Test functions with exact derivatives, exact antiderivatives where known,
//! and analytic convexity certificates that are re-checked by the probe when
//! a function is registered.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::oracle::{integrate, sconcavity_probe, sconvexity_probe, Verdict, DEFAULT_PROBE_N};
use crate::params::{ConvexityMode, Interval, MIN_S};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// What a [`Certificate`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppliesTo {
    /// `f` itself
    F,
    /// `|f'|^q`
    AbsDerivPowQ,
}

/// A claim that `f` (or `|f'|^q`) is s-convex / s-concave on the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub mode: ConvexityMode,
    pub s: f64,
    pub q: f64,
    pub applies_to: AppliesTo,
}

/// An evaluable `f` with exact `f'`.
#[derive(Clone)]
pub struct TestFunction {
    id: String,
    f: RealFn,
    df: RealFn,
    antiderivative: Option<RealFn>,
    certificates: Vec<Certificate>,
    domain: (f64, f64),
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("certificates", &self.certificates)
            .field("domain", &self.domain)
            .finish()
    }
}

impl TestFunction {
    /// An uncertified function on `[lo, hi]`.
    pub fn new<F, D>(id: impl Into<String>, f: F, df: D, lo: f64, hi: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TestFunction {
            id: id.into(),
            f: Arc::new(f),
            df: Arc::new(df),
            antiderivative: None,
            certificates: Vec::new(),
            domain: (lo, hi),
        }
    }

    pub fn with_antiderivative<P>(mut self, big_f: P) -> Self
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.antiderivative = Some(Arc::new(big_f));
        self
    }

    pub fn with_certificate(mut self, c: Certificate) -> Self {
        self.certificates.push(c);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.df)(x)
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    /// Certificate on `|f'|^q`, if any.
    pub fn derivative_certificate(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.applies_to == AppliesTo::AbsDerivPowQ)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn in_domain(&self, iv: &Interval) -> bool {
        self.domain.0 <= iv.a() && iv.b() <= self.domain.1
    }

    pub fn has_exact_mean(&self) -> bool {
        self.antiderivative.is_some()
    }

    /// `(1/(b-a)) int_a^b f` from the antiderivative.
    pub fn exact_mean_integral(&self, iv: &Interval) -> Option<f64> {
        self.antiderivative.as_ref().map(|p| (p(iv.b()) - p(iv.a())) / iv.width())
    }

    /// Exact mean when known, adaptive quadrature otherwise.
    pub fn mean_integral(&self, iv: &Interval) -> Result<f64> {
        if let Some(m) = self.exact_mean_integral(iv) {
            return Ok(m);
        }
        let scale = self.eval(iv.a()).abs().max(self.eval(iv.b()).abs()).max(1.0);
        let r = integrate(|x| self.eval(x), iv.a(), iv.b(), 1e-12 * scale * iv.width())?;
        Ok(r.value / iv.width())
    }
}

/// `f(t) = beta t^s` on `[0, inf)`, s-convex itself; `|f'|^q` is convex on
/// `(0, inf)` because `f'` is a negative power.
pub fn make_power_s(beta: f64, s: f64) -> Result<TestFunction> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("beta must be > 0, got {beta}"));
    }
    if !(s > 0.0 && s < 1.0) {
        return domain(format!("s must lie in (0, 1), got {s}"));
    }
    let id = format!("power_s(beta={beta},s={s})");
    Ok(TestFunction::new(id, move |t: f64| beta * t.powf(s), move |t: f64| beta * s * t.powf(s - 1.0), 0.0, f64::INFINITY)
        .with_antiderivative(move |t: f64| beta * t.powf(s + 1.0) / (s + 1.0))
        .with_certificate(Certificate { mode: ConvexityMode::SConvex, s, q: 1.0, applies_to: AppliesTo::F }))
}

/// `f(t) = t^(s+1)`; `|f'|^q = (s+1)^q t^(qs)` is `qs`-convex for `qs <= 1`.
pub fn make_power_s1(s: f64, q: f64) -> Result<TestFunction> {
    if !(s > 0.0 && s <= 1.0) {
        return domain(format!("s must lie in (0, 1], got {s}"));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return domain(format!("q must be >= 1, got {q}"));
    }
    if q * s > 1.0 {
        return domain(format!("certificate needs q s <= 1, got q s = {}", q * s));
    }
    let id = format!("power_s1(s={s})");
    Ok(TestFunction::new(id, move |t: f64| t.powf(s + 1.0), move |t: f64| (s + 1.0) * t.powf(s), 0.0, f64::INFINITY)
        .with_antiderivative(move |t: f64| t.powf(s + 2.0) / (s + 2.0))
        .with_certificate(Certificate {
            mode: ConvexityMode::SConvex,
            s: q * s,
            q,
            applies_to: AppliesTo::AbsDerivPowQ,
        }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcaveKind {
    /// `f(x) = (2/3) x^(3/2)`, `f'(x) = sqrt(x)`
    SqrtDeriv,
    /// `f(x) = x ln x - x`, `f'(x) = ln x`
    LogDeriv,
}

/// Functions whose `|f'|^q` is concave for `q in (1, 2]`.
pub fn make_concave_deriv(kind: ConcaveKind, q: f64) -> Result<TestFunction> {
    if !(q > 1.0 && q <= 2.0) {
        return domain(format!("concave certificates hold for q in (1, 2], got {q}"));
    }
    let cert = Certificate { mode: ConvexityMode::SConcave, s: 1.0, q, applies_to: AppliesTo::AbsDerivPowQ };
    Ok(match kind {
        ConcaveKind::SqrtDeriv => TestFunction::new(
            "sqrt_deriv",
            |x: f64| 2.0 / 3.0 * x.powf(1.5),
            f64::sqrt,
            0.0,
            f64::INFINITY,
        )
        .with_antiderivative(|x: f64| 4.0 / 15.0 * x.powf(2.5))
        .with_certificate(cert),
        // (ln x)^q is concave once ln x >= q - 1
        ConcaveKind::LogDeriv => TestFunction::new(
            "log_deriv",
            |x: f64| x * x.ln() - x,
            f64::ln,
            std::f64::consts::E,
            f64::INFINITY,
        )
        .with_antiderivative(|x: f64| x * x * (2.0 * x.ln() - 3.0) / 4.0)
        .with_certificate(cert),
    })
}

/// `f(x) = x^2`; `|f'|^q = (2x)^q` is convex on `[0, inf)` for every `q >= 1`.
pub fn make_square(q: f64) -> Result<TestFunction> {
    if !(q >= 1.0 && q.is_finite()) {
        return domain(format!("q must be >= 1, got {q}"));
    }
    Ok(TestFunction::new("square", |x: f64| x * x, |x: f64| 2.0 * x, 0.0, f64::INFINITY)
        .with_antiderivative(|x: f64| x * x * x / 3.0)
        .with_certificate(Certificate {
            mode: ConvexityMode::SConvex,
            s: 1.0,
            q,
            applies_to: AppliesTo::AbsDerivPowQ,
        }))
}

/// `f(x) = e^x`; `|f'|^q = e^(qx)` is convex for every `q >= 1`.
pub fn make_exp(q: f64) -> Result<TestFunction> {
    if !(q >= 1.0 && q.is_finite()) {
        return domain(format!("q must be >= 1, got {q}"));
    }
    Ok(TestFunction::new("exp", f64::exp, f64::exp, f64::NEG_INFINITY, f64::INFINITY)
        .with_antiderivative(f64::exp)
        .with_certificate(Certificate {
            mode: ConvexityMode::SConvex,
            s: 1.0,
            q,
            applies_to: AppliesTo::AbsDerivPowQ,
        }))
}

/// Registered family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Square,
    Exp,
    PowerS,
    PowerS1,
    SqrtDeriv,
    LogDeriv,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Square, Family::Exp, Family::PowerS, Family::PowerS1, Family::SqrtDeriv, Family::LogDeriv];

    pub fn id(self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Exp => "exp",
            Family::PowerS => "power_s",
            Family::PowerS1 => "power_s1",
            Family::SqrtDeriv => "sqrt_deriv",
            Family::LogDeriv => "log_deriv",
        }
    }

    pub fn from_id(id: &str) -> Result<Family> {
        Family::ALL.into_iter().find(|f| f.id() == id).ok_or_else(|| Error::UnknownFunction(id.to_string()))
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::Square => "x^2",
            Family::Exp => "e^x",
            Family::PowerS => "t^(1/2)",
            Family::PowerS1 => "t^(s/q + 1), tuned so |f'|^q is s-convex",
            Family::SqrtDeriv => "(2/3) x^(3/2), |f'|^q concave for q <= 2",
            Family::LogDeriv => "x ln x - x on [e, inf), |f'|^q concave for q <= 2",
        }
    }

    pub fn mode(self) -> ConvexityMode {
        match self {
            Family::SqrtDeriv | Family::LogDeriv => ConvexityMode::SConcave,
            _ => ConvexityMode::SConvex,
        }
    }

    /// Whether the family can certify `|f'|^q` as s-convex / s-concave.
    pub fn supports(self, s: f64, q: f64) -> bool {
        match self.mode() {
            ConvexityMode::SConvex => (MIN_S..=1.0).contains(&s) && q >= 1.0,
            ConvexityMode::SConcave => s == 1.0 && q > 1.0 && q <= 2.0,
        }
    }

    /// Default member used by the catalog.
    pub fn default_instance(self) -> TestFunction {
        match self.mode() {
            ConvexityMode::SConvex => certified_instance(self, 1.0, 1.0),
            ConvexityMode::SConcave => certified_instance(self, 1.0, 2.0),
        }
        .expect("default parameters are valid")
    }
}

/// A member of `family` whose `|f'|^q` is certified s-convex (or s-concave)
/// for exactly the requested `(s, q)`.
///
/// Nonnegative convex functions are s-convex for every `s`, and an s-convex
/// nonnegative function is also s'-convex for `s' < s`, so convex-mode
/// families accept any `s`. Concave certificates only exist for `s = 1`: a
/// positive function cannot satisfy the reversed inequality at `x = y` when
/// `s < 1`.
pub fn certified_instance(family: Family, s: f64, q: f64) -> Result<TestFunction> {
    if !family.supports(s, q) {
        return Err(Error::Config(format!(
            "{} cannot certify |f'|^q as {}-{} with q = {q}",
            family.id(),
            s,
            match family.mode() {
                ConvexityMode::SConvex => "convex",
                ConvexityMode::SConcave => "concave",
            }
        )));
    }
    let recert = |f: TestFunction| {
        let mut f = f;
        f.certificates.retain(|c| c.applies_to != AppliesTo::AbsDerivPowQ);
        f.with_certificate(Certificate { mode: family.mode(), s, q, applies_to: AppliesTo::AbsDerivPowQ })
    };
    let f = match family {
        Family::Square => recert(make_square(q)?),
        Family::Exp => recert(make_exp(q)?),
        Family::PowerS => recert(make_power_s(1.0, 0.5)?),
        Family::PowerS1 => make_power_s1(s / q, q)?,
        Family::SqrtDeriv => make_concave_deriv(ConcaveKind::SqrtDeriv, q)?,
        Family::LogDeriv => make_concave_deriv(ConcaveKind::LogDeriv, q)?,
    };
    let mut f = f;
    f.id = family.id().to_string();
    Ok(f)
}

/// Upper end of the window used for probing and sampling.
pub const SAMPLE_HI: f64 = 10.0;
/// Lower end of the window used for probing and sampling.
pub const SAMPLE_LO: f64 = 0.01;

/// The part of `f`'s domain inside `[SAMPLE_LO, SAMPLE_HI]`.
pub fn sample_window(f: &TestFunction) -> Interval {
    let (lo, hi) = f.domain();
    Interval::new(lo.max(SAMPLE_LO), hi.min(SAMPLE_HI)).expect("every family overlaps the window")
}

/// Outcome of the registration checks for one function.
#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub id: String,
    /// Largest relative gap between `f'` and a central difference of `f`.
    pub derivative_error: f64,
    pub certificate_probes: Vec<(Certificate, Verdict)>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.derivative_error <= 1e-6 && self.certificate_probes.iter().all(|(_, v)| v.passed())
    }
}

/// Finite-difference check of `f'` at 100 interior points plus a probe of
/// every certificate.
pub fn validate(f: &TestFunction) -> Validation {
    let w = sample_window(f);
    let mut worst = 0.0f64;
    for i in 1..=100 {
        let x = w.a() + w.width() * i as f64 / 101.0;
        let h = 1e-4 * x.abs().max(1e-3);
        let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
        let d = f.deriv(x);
        worst = worst.max((fd - d).abs() / d.abs().max(1.0));
    }
    let probes = f
        .certificates()
        .iter()
        .map(|c| {
            let q = c.q;
            let v = match (c.applies_to, c.mode) {
                (AppliesTo::F, ConvexityMode::SConvex) => sconvexity_probe(|x| f.eval(x), c.s, &w, DEFAULT_PROBE_N),
                (AppliesTo::F, ConvexityMode::SConcave) => sconcavity_probe(|x| f.eval(x), c.s, &w, DEFAULT_PROBE_N),
                (AppliesTo::AbsDerivPowQ, ConvexityMode::SConvex) => {
                    sconvexity_probe(|x| f.deriv(x).abs().powf(q), c.s, &w, DEFAULT_PROBE_N)
                }
                (AppliesTo::AbsDerivPowQ, ConvexityMode::SConcave) => {
                    sconcavity_probe(|x| f.deriv(x).abs().powf(q), c.s, &w, DEFAULT_PROBE_N)
                }
            };
            (*c, v)
        })
        .collect();
    Validation { id: f.id().to_string(), derivative_error: worst, certificate_probes: probes }
}

/// Default member of every family, each validated on registration.
pub fn catalog() -> Result<Vec<TestFunction>> {
    Family::ALL
        .into_iter()
        .map(|fam| {
            let f = fam.default_instance();
            let v = validate(&f);
            if !v.passed() {
                return Err(Error::Config(format!("registration check failed for {}: {v:?}", fam.id())));
            }
            Ok(f)
        })
        .collect()
}

/// Looks up the default member of a family by id.
pub fn by_id(id: &str) -> Result<TestFunction> {
    Ok(Family::from_id(id)?.default_instance())
}

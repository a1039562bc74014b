//! Parameter types shared by the bounds, oracle and harness modules.

use std::fmt;

use crate::error::{domain, Error, Result};

/// Smallest convexity exponent accepted anywhere; `t^s` kernels are too
/// ill-conditioned below this.
pub const MIN_S: f64 = 1e-6;

/// A compact interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
    nonneg: bool,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return domain(format!("interval endpoints must be finite, got [{a}, {b}]"));
        }
        if a >= b {
            return domain(format!("interval requires a < b, got [{a}, {b}]"));
        }
        Ok(Interval { a, b, nonneg: a >= 0.0 })
    }

    /// Same as [`Interval::new`] but additionally demands `a >= 0`, as the
    /// s-convexity hypotheses live on `[0, inf)`.
    pub fn nonneg(a: f64, b: f64) -> Result<Self> {
        let iv = Self::new(a, b)?;
        if !iv.nonneg {
            return domain(format!("interval must lie in [0, inf), got [{a}, {b}]"));
        }
        Ok(iv)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_nonneg(&self) -> bool {
        self.nonneg
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    /// `t b + (1 - t) a`.
    pub fn lerp(&self, t: f64) -> f64 {
        t * self.b + (1.0 - t) * self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// The weights `(alpha, lambda)` of the rule
/// `lambda (alpha f(a) + (1-alpha) f(b)) + (1-lambda) f(alpha a + (1-alpha) b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleParams {
    alpha: f64,
    lambda: f64,
}

impl RuleParams {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return domain(format!("alpha must lie in [0, 1], got {alpha}"));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return domain(format!("lambda must lie in [0, 1], got {lambda}"));
        }
        Ok(RuleParams { alpha, lambda })
    }

    pub const MIDPOINT: RuleParams = RuleParams { alpha: 0.5, lambda: 0.0 };
    pub const TRAPEZOID: RuleParams = RuleParams { alpha: 0.5, lambda: 1.0 };
    pub const SIMPSON: RuleParams = RuleParams { alpha: 0.5, lambda: 1.0 / 3.0 };

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The parameters with `alpha` replaced by `1 - alpha`; the right half of
    /// the kernel is the left half of the mirrored rule.
    pub fn mirrored(&self) -> RuleParams {
        RuleParams { alpha: 1.0 - self.alpha, lambda: self.lambda }
    }

    /// Interior node `alpha a + (1 - alpha) b`, i.e. `t = 1 - alpha`.
    pub fn node(&self, iv: &Interval) -> f64 {
        self.alpha * iv.a() + (1.0 - self.alpha) * iv.b()
    }

    /// Midpoint of `[a, node]`, where the left s-concave estimate samples `|f'|`.
    pub fn lower_quarter_node(&self, iv: &Interval) -> f64 {
        0.5 * ((1.0 - self.alpha) * iv.b() + (1.0 + self.alpha) * iv.a())
    }

    /// Midpoint of `[node, b]`.
    pub fn upper_quarter_node(&self, iv: &Interval) -> f64 {
        0.5 * ((2.0 - self.alpha) * iv.b() + self.alpha * iv.a())
    }
}

impl fmt::Display for RuleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, lambda={})", self.alpha, self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvexityMode {
    SConvex,
    SConcave,
}

impl fmt::Display for ConvexityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexityMode::SConvex => f.write_str("s-convex"),
            ConvexityMode::SConcave => f.write_str("s-concave"),
        }
    }
}

/// Hypothesis on `|f'|^q`: s-convex or s-concave with exponent `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityClass {
    s: f64,
    q: f64,
    mode: ConvexityMode,
}

impl ConvexityClass {
    pub fn new(s: f64, q: f64, mode: ConvexityMode) -> Result<Self> {
        if !(s.is_finite() && s > 0.0 && s <= 1.0) {
            return domain(format!("s must lie in (0, 1], got {s}"));
        }
        if s < MIN_S {
            return domain(format!("s = {s:e} is below the accepted minimum {MIN_S:e}"));
        }
        if !(q.is_finite() && q >= 1.0) {
            return domain(format!("q must be a finite value >= 1, got {q}"));
        }
        Ok(ConvexityClass { s, q, mode })
    }

    pub fn convex(s: f64, q: f64) -> Result<Self> {
        Self::new(s, q, ConvexityMode::SConvex)
    }

    pub fn concave(s: f64, q: f64) -> Result<Self> {
        Self::new(s, q, ConvexityMode::SConcave)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn mode(&self) -> ConvexityMode {
        self.mode
    }

    /// Conjugate exponent `p = q / (q - 1)`; only defined for `q > 1`.
    pub fn conjugate(&self) -> Result<f64> {
        if self.q <= 1.0 {
            return domain(format!("Hoelder bounds need q > 1, got q = {}", self.q));
        }
        Ok(self.q / (self.q - 1.0))
    }
}

/// Magnitudes of `f'` at the nodes the bounds consume.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DerivativeData {
    pub d_a: f64,
    pub d_b: f64,
    /// `|f'((1-alpha) b + alpha a)|`
    pub d_mix: Option<f64>,
    /// `|f'(((1-alpha) b + (1+alpha) a) / 2)|`
    pub d_lo: Option<f64>,
    /// `|f'(((2-alpha) b + alpha a) / 2)|`
    pub d_hi: Option<f64>,
}

fn check_magnitude(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return domain(format!("{name} must be finite and >= 0, got {v}"));
    }
    Ok(())
}

impl DerivativeData {
    pub fn new(d_a: f64, d_b: f64) -> Result<Self> {
        check_magnitude("d_a", d_a)?;
        check_magnitude("d_b", d_b)?;
        Ok(DerivativeData { d_a, d_b, ..Default::default() })
    }

    pub fn with_mix(mut self, d_mix: f64) -> Result<Self> {
        check_magnitude("d_mix", d_mix)?;
        self.d_mix = Some(d_mix);
        Ok(self)
    }

    pub fn with_quarters(mut self, d_lo: f64, d_hi: f64) -> Result<Self> {
        check_magnitude("d_lo", d_lo)?;
        check_magnitude("d_hi", d_hi)?;
        self.d_lo = Some(d_lo);
        self.d_hi = Some(d_hi);
        Ok(self)
    }

    /// Samples `|f'|` at every node any bound may need.
    pub fn sample<F: Fn(f64) -> f64>(deriv: F, params: &RuleParams, iv: &Interval) -> Result<Self> {
        DerivativeData::new(deriv(iv.a()).abs(), deriv(iv.b()).abs())?
            .with_mix(deriv(params.node(iv)).abs())?
            .with_quarters(
                deriv(params.lower_quarter_node(iv)).abs(),
                deriv(params.upper_quarter_node(iv)).abs(),
            )
    }

    pub fn mix(&self) -> Result<f64> {
        self.d_mix.ok_or(Error::MissingData("d_mix (|f'| at the interior node)"))
    }

    pub fn lo(&self) -> Result<f64> {
        self.d_lo.ok_or(Error::MissingData("d_lo (|f'| at the lower quarter node)"))
    }

    pub fn hi(&self) -> Result<f64> {
        self.d_hi.ok_or(Error::MissingData("d_hi (|f'| at the upper quarter node)"))
    }
}

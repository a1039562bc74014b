//! Closed forms of the general estimates at the midpoint, trapezoid and
//! Simpson weights, written out term by term.

use std::fmt;
use std::str::FromStr;

use crate::bounds::bound::{Bound, Method};
use crate::bounds::case::classify_case;
use crate::bounds::classical;
use crate::error::{domain, Error, Result};
use crate::params::{ConvexityClass, ConvexityMode, DerivativeData, Interval, RuleParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Midpoint,
    Trapezoid,
    Simpson,
}

impl Rule {
    pub const ALL: [Rule; 3] = [Rule::Midpoint, Rule::Trapezoid, Rule::Simpson];

    pub fn params(self) -> RuleParams {
        match self {
            Rule::Midpoint => RuleParams::MIDPOINT,
            Rule::Trapezoid => RuleParams::TRAPEZOID,
            Rule::Simpson => RuleParams::SIMPSON,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Midpoint => "midpoint",
            Rule::Trapezoid => "trapezoid",
            Rule::Simpson => "simpson",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}` (expected midpoint, trapezoid or simpson)"))
    }
}

fn rt(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        x
    } else {
        x.powf(1.0 / q)
    }
}

fn require(cls: &ConvexityClass, mode: ConvexityMode) -> Result<()> {
    if cls.mode() != mode {
        return domain(format!("this display assumes |f'|^q {mode}"));
    }
    Ok(())
}

fn pair(method: Method, rule: Rule, scale: f64, t1: f64, t2: f64) -> Bound {
    let case = classify_case(&rule.params()).case;
    Bound::assemble(method, case, scale, &[("first", t1), ("second", t2)], &[])
}

/// Simpson weights, power-mean form.
pub fn simpson_power_mean_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require(cls, ConvexityMode::SConvex)?;
    let (s, q) = (cls.s(), cls.q());
    let (xa, xb) = (d.d_a.powf(q), d.d_b.powf(q));
    let den = 3.0 * 6f64.powf(s + 1.0) * (s + 1.0) * (s + 2.0);
    let k1 = ((2.0 * s + 1.0) * 3f64.powf(s + 1.0) + 2.0) / den;
    let k2 = (2.0 * 5f64.powf(s + 2.0) + (s - 4.0) * 6f64.powf(s + 1.0)
        - (2.0 * s + 7.0) * 3f64.powf(s + 1.0))
        / den;
    let w = if q == 1.0 { 1.0 } else { (5.0f64 / 36.0).powf(1.0 - 1.0 / q) };
    let scale = iv.width() / 2.0 * w;
    Ok(pair(Method::PowerMean, Rule::Simpson, scale, rt(k1 * xb + k2 * xa, q), rt(k2 * xb + k1 * xa, q)))
}

/// Midpoint weights, power-mean form.
pub fn midpoint_power_mean_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require(cls, ConvexityMode::SConvex)?;
    let (s, q) = (cls.s(), cls.q());
    let (xa, xb) = (d.d_a.powf(q), d.d_b.powf(q));
    let w = 2f64.powf(1.0 - s);
    let near = w * (s + 1.0) / 2.0;
    let far = w * (2f64.powf(s + 2.0) - s - 3.0) / 2.0;
    let scale = iv.width() / 8.0 * rt(2.0 / ((s + 1.0) * (s + 2.0)), q);
    Ok(pair(Method::PowerMean, Rule::Midpoint, scale, rt(near * xb + far * xa, q), rt(near * xa + far * xb, q)))
}

/// Trapezoid weights, power-mean form, with the coefficient the general
/// estimate actually produces: `2^(1-s) + 4s` on the far endpoint.
pub fn trapezoid_power_mean_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require(cls, ConvexityMode::SConvex)?;
    let (s, q) = (cls.s(), cls.q());
    let (xa, xb) = (d.d_a.powf(q), d.d_b.powf(q));
    let w = 2f64.powf(1.0 - s);
    let far = w + 4.0 * s;
    let scale = iv.width() / 8.0 * rt(1.0 / ((s + 1.0) * (s + 2.0)), q);
    Ok(pair(Method::PowerMean, Rule::Trapezoid, scale, rt(w * xb + far * xa, q), rt(w * xa + far * xb, q)))
}

/// Trapezoid weights, power-mean form, with the far-endpoint coefficient
/// `2^(1-s) (2^(s+1) + 1)` as it appears in print. Agrees with the general
/// estimate only at `s = 1` and exceeds it for `s < 1`.
pub fn trapezoid_power_mean_printed(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require(cls, ConvexityMode::SConvex)?;
    let (s, q) = (cls.s(), cls.q());
    let (xa, xb) = (d.d_a.powf(q), d.d_b.powf(q));
    let far = 2f64.powf(s + 1.0) + 1.0;
    let scale = iv.width() / 8.0 * rt(2f64.powf(1.0 - s) / ((s + 1.0) * (s + 2.0)), q);
    Ok(pair(Method::PowerMean, Rule::Trapezoid, scale, rt(xb + xa * far, q), rt(xa + xb * far, q)))
}

fn holder_two_sided(
    rule: Rule,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
    head: f64,
) -> Result<Bound> {
    require(cls, ConvexityMode::SConvex)?;
    let p = cls.conjugate()?;
    let (s, q) = (cls.s(), cls.q());
    let m = d.mix()?.powf(q);
    let scale = iv.width() * head * (1.0 / (p + 1.0)).powf(1.0 / p);
    let t1 = ((m + d.d_a.powf(q)) / (s + 1.0)).powf(1.0 / q);
    let t2 = ((m + d.d_b.powf(q)) / (s + 1.0)).powf(1.0 / q);
    Ok(pair(Method::HolderConvex, rule, scale, t1, t2))
}

/// Simpson weights, convex Hoelder form. `d.d_mix` is `|f'((a+b)/2)|`.
pub fn simpson_holder_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    let p = cls.conjugate()?;
    // (1/12) ((1 + 2^(p+1)) / 3)^(1/p) (1/(p+1))^(1/p)
    let head = ((1.0 + 2f64.powf(p + 1.0)) / 3.0).powf(1.0 / p) / 12.0;
    holder_two_sided(Rule::Simpson, cls, d, iv, head)
}

/// Midpoint weights, convex Hoelder form.
pub fn midpoint_holder_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    holder_two_sided(Rule::Midpoint, cls, d, iv, 0.25)
}

/// Trapezoid weights, convex Hoelder form.
pub fn trapezoid_holder_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    holder_two_sided(Rule::Trapezoid, cls, d, iv, 0.25)
}

fn concave_quarters(rule: Rule, cls: &ConvexityClass, d: &DerivativeData, iv: &Interval, with_s: bool) -> Result<Bound> {
    require(cls, ConvexityMode::SConcave)?;
    let p = cls.conjugate()?;
    let (s, q) = (cls.s(), cls.q());
    let factor = if with_s { 0.5f64.powf((1.0 - s) / q) } else { 1.0 };
    let scale = iv.width() / 4.0 * (1.0 / (p + 1.0)).powf(1.0 / p) * factor;
    Ok(pair(Method::HolderConcave, rule, scale, d.hi()?, d.lo()?))
}

/// Trapezoid weights, concave Hoelder form. `d_hi`, `d_lo` are `|f'|` at
/// `(3b+a)/4` and `(3a+b)/4`.
pub fn trapezoid_concave_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    concave_quarters(Rule::Trapezoid, cls, d, iv, true)
}

/// Midpoint weights, concave Hoelder form.
pub fn midpoint_concave_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    concave_quarters(Rule::Midpoint, cls, d, iv, true)
}

/// Trapezoid concave form without the `(1/2)^((1-s)/q)` factor; equals
/// [`trapezoid_concave_display`] at `s = 1` and is looser below.
pub fn trapezoid_concave_unit_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    concave_quarters(Rule::Trapezoid, cls, d, iv, false)
}

/// Midpoint concave form without the `(1/2)^((1-s)/q)` factor.
pub fn midpoint_concave_unit_display(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    concave_quarters(Rule::Midpoint, cls, d, iv, false)
}

/// `(b-a)/2 (1/(p+1))^(1/p) |f'((a+b)/2)|`: both concave quarter-node forms
/// collapse to this once `|f'|` is concave, since
/// `|f'((3b+a)/4)| + |f'((3a+b)/4)| <= 2 |f'((a+b)/2)|`.
pub fn concave_single_node(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<f64> {
    require(cls, ConvexityMode::SConcave)?;
    let p = cls.conjugate()?;
    Ok(iv.width() / 2.0 * (1.0 / (p + 1.0)).powf(1.0 / p) * d.mix()?)
}

/// Specialized closed form of `method` at the weights of `rule`.
pub fn named_rule_bound(
    rule: Rule,
    method: Method,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
) -> Result<Bound> {
    use Method::*;
    let b = match (rule, method) {
        (Rule::Simpson, PowerMean) => simpson_power_mean_display(cls, d, iv)?,
        (Rule::Midpoint, PowerMean) => midpoint_power_mean_display(cls, d, iv)?,
        (Rule::Trapezoid, PowerMean) => trapezoid_power_mean_display(cls, d, iv)?,
        (Rule::Simpson, HolderConvex) => simpson_holder_display(cls, d, iv)?,
        (Rule::Midpoint, HolderConvex) => midpoint_holder_display(cls, d, iv)?,
        (Rule::Trapezoid, HolderConvex) => trapezoid_holder_display(cls, d, iv)?,
        (Rule::Midpoint, HolderConcave) => midpoint_concave_display(cls, d, iv)?,
        (Rule::Trapezoid, HolderConcave) => trapezoid_concave_display(cls, d, iv)?,
        (Rule::Midpoint, PriorMidpointPowerMean) => classical::prior_midpoint_power_mean(cls, d, iv)?,
        (Rule::Midpoint, PriorMidpointHolder) => classical::prior_midpoint_holder(cls, d, iv)?,
        (Rule::Simpson, PriorSimpsonHolder) => classical::prior_simpson_holder(cls, d, iv)?,
        (Rule::Trapezoid, PriorTrapezoidHolder) => classical::prior_trapezoid_holder(cls, d, iv)?,
        (_, ConvexPowerMean) => classical::convex_power_mean(&rule.params(), cls, d, iv)?,
        _ => {
            return Err(Error::Unsupported(format!("no {rule} closed form for method {method}")));
        }
    };
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::general::{bound_holder_convex, bound_power_mean};

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn simpson_power_mean_square() {
        let cls = ConvexityClass::convex(1.0, 1.0).unwrap();
        let d = DerivativeData::new(0.0, 2.0).unwrap();
        let b = named_rule_bound(Rule::Simpson, Method::PowerMean, &cls, &d, &unit()).unwrap();
        assert!((b.value - 5.0 / 36.0).abs() < 1e-14);
        let g = bound_power_mean(&RuleParams::SIMPSON, &cls, &d, &unit()).unwrap();
        assert!((b.value - g.value).abs() < 1e-14);
    }

    #[test]
    fn simpson_holder_square() {
        let cls = ConvexityClass::convex(1.0, 2.0).unwrap();
        let d = DerivativeData::new(0.0, 2.0).unwrap().with_mix(1.0).unwrap();
        let b = named_rule_bound(Rule::Simpson, Method::HolderConvex, &cls, &d, &unit()).unwrap();
        let g = bound_holder_convex(&RuleParams::SIMPSON, &cls, &d, &unit()).unwrap();
        assert!((b.value - 0.19069).abs() < 1e-5);
        assert!((b.value - g.value).abs() < 1e-14);
    }

    #[test]
    fn printed_trapezoid_coefficient_only_matches_at_unit_s() {
        let d = DerivativeData::new(0.7, 1.9).unwrap();
        let cls = ConvexityClass::convex(1.0, 2.0).unwrap();
        let a = trapezoid_power_mean_display(&cls, &d, &unit()).unwrap().value;
        let b = trapezoid_power_mean_printed(&cls, &d, &unit()).unwrap().value;
        assert!((a - b).abs() < 1e-14);
        let cls = ConvexityClass::convex(0.5, 2.0).unwrap();
        let a = trapezoid_power_mean_display(&cls, &d, &unit()).unwrap().value;
        let b = trapezoid_power_mean_printed(&cls, &d, &unit()).unwrap().value;
        assert!(b > a);
    }

    #[test]
    fn unsupported_pairs() {
        let cls = ConvexityClass::convex(0.5, 2.0).unwrap();
        let d = DerivativeData::new(1.0, 1.0).unwrap().with_mix(1.0).unwrap();
        for (r, m) in [
            (Rule::Midpoint, Method::PriorSimpsonHolder),
            (Rule::Trapezoid, Method::PriorMidpointHolder),
            (Rule::Simpson, Method::PriorTrapezoidHolder),
            (Rule::Simpson, Method::HolderConcave),
        ] {
            assert!(matches!(named_rule_bound(r, m, &cls, &d, &unit()), Err(Error::Unsupported(_))));
        }
    }
}

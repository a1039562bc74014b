//! Closed-form coefficients and error bounds for the three-point rule
//! `lambda (alpha f(a) + (1-alpha) f(b)) + (1-lambda) f(alpha a + (1-alpha) b)`.

mod bound;
mod case;
pub mod classical;
mod general;
mod moments;
pub mod named;

pub use bound::{Bound, Method};
pub use case::{classify_case, Branch, CaseId, Classification, TIE_EPS};
pub use general::{
    bound_holder_concave, bound_holder_concave_case, bound_holder_convex, bound_holder_convex_case,
    bound_power_mean, bound_power_mean_case,
};
pub use moments::{holder_moments, kernel_moments, HolderMoments, MomentSet};
pub use named::{named_rule_bound, Rule};

use crate::error::{Error, Result};
use crate::params::{ConvexityClass, DerivativeData, Interval, RuleParams};
use crate::zoo::TestFunction;

/// `I_f(lambda, alpha, a, b)`: the rule value minus the mean of `f`, signed.
pub fn rule_error(f: &TestFunction, params: &RuleParams, iv: &Interval) -> Result<f64> {
    let (al, l) = (params.alpha(), params.lambda());
    let rule = l * (al * f.eval(iv.a()) + (1.0 - al) * f.eval(iv.b())) + (1.0 - l) * f.eval(params.node(iv));
    Ok(rule - f.mean_integral(iv)?)
}

/// The named rule with exactly these weights, if any.
pub fn rule_for(params: &RuleParams) -> Option<Rule> {
    Rule::ALL.into_iter().find(|r| {
        let p = r.params();
        (p.alpha() - params.alpha()).abs() <= 1e-12 && (p.lambda() - params.lambda()).abs() <= 1e-12
    })
}

/// Evaluates one method at `params`. Earlier single-rule bounds are only
/// available when `params` are the weights of that rule.
pub fn method_bound(
    method: Method,
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
) -> Result<Bound> {
    match method {
        Method::PowerMean => bound_power_mean(params, cls, d, iv),
        Method::HolderConvex => bound_holder_convex(params, cls, d, iv),
        Method::HolderConcave => bound_holder_concave(params, cls, d, iv),
        Method::ConvexPowerMean => classical::convex_power_mean(params, cls, d, iv),
        _ => {
            let rule = rule_for(params).ok_or_else(|| {
                Error::Unsupported(format!("{method} is only stated for a named rule, got {params}"))
            })?;
            named_rule_bound(rule, method, cls, d, iv)
        }
    }
}

/// Result of [`best_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct BestBound {
    pub best: Bound,
    /// Every method that applied, in request order.
    pub all: Vec<Bound>,
    /// Methods whose hypotheses failed, with the reason.
    pub skipped: Vec<(Method, Error)>,
}

/// Evaluates every requested method whose hypotheses hold and returns the
/// smallest.
pub fn best_bound(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
    methods: &[Method],
) -> Result<BestBound> {
    let mut all = Vec::new();
    let mut skipped = Vec::new();
    for &m in methods {
        match method_bound(m, params, cls, d, iv) {
            Ok(b) => all.push(b),
            Err(e @ (Error::NegativeMoment { .. } | Error::NonConvergence(_))) => return Err(e),
            Err(e) => skipped.push((m, e)),
        }
    }
    let best = all
        .iter()
        .min_by(|x, y| x.value.total_cmp(&y.value))
        .cloned()
        .ok_or_else(|| {
            let why: Vec<String> = skipped.iter().map(|(m, e)| format!("{m}: {e}")).collect();
            Error::NoApplicableMethod(if why.is_empty() { "no methods requested".into() } else { why.join("; ") })
        })?;
    Ok(BestBound { best, all, skipped })
}

//! Weighted arithmetic, arithmetic and p-logarithmic means, and the two
//! mean inequalities obtained by applying the bounds to `f(t) = t^(s+1)`.

use crate::bounds::{classify_case, holder_moments, kernel_moments, CaseId};
use crate::error::{domain, Result};
use crate::params::{MIN_S, RuleParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanKind {
    WeightedArith,
    Arith,
    PLog,
}

/// A mean together with its inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValue {
    pub kind: MeanKind,
    pub value: f64,
    pub a: f64,
    pub b: f64,
    /// `alpha` for the weighted mean, `p` for the logarithmic one.
    pub param: Option<f64>,
}

/// `alpha a + (1 - alpha) b`.
pub fn weighted_arith(alpha: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return domain(format!("alpha must lie in [0, 1], got {alpha}"));
    }
    Ok(alpha * a + (1.0 - alpha) * b)
}

pub fn arith(a: f64, b: f64) -> f64 {
    (a + b) / 2.0
}

/// `((b^(p+1) - a^(p+1)) / ((p+1)(b-a)))^(1/p)` for `0 < a < b`, `p != -1, 0`.
pub fn p_log(a: f64, b: f64, p: f64) -> Result<f64> {
    check_pair(a, b)?;
    if p == 0.0 || p == -1.0 || !p.is_finite() {
        return domain(format!("p must be finite and not 0 or -1, got {p}"));
    }
    Ok(p_log_pow(a, b, p).powf(1.0 / p))
}

/// `L_p(a, b)^p` without the final root.
fn p_log_pow(a: f64, b: f64, p: f64) -> f64 {
    (b.powf(p + 1.0) - a.powf(p + 1.0)) / ((p + 1.0) * (b - a))
}

fn check_pair(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return domain(format!("means need 0 < a < b, got a = {a}, b = {b}"));
    }
    Ok(())
}

pub fn mean_value(kind: MeanKind, a: f64, b: f64, param: Option<f64>) -> Result<MeanValue> {
    let value = match kind {
        MeanKind::WeightedArith => weighted_arith(param.unwrap_or(0.5), a, b)?,
        MeanKind::Arith => arith(a, b),
        MeanKind::PLog => p_log(a, b, param.unwrap_or(1.0))?,
    };
    Ok(MeanValue { kind, value, a, b, param })
}

/// Both sides of one mean inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropositionReport {
    pub lhs: f64,
    /// Right-hand side with `|f'|^q` taken as s-convex.
    pub rhs: f64,
    /// Right-hand side with `|f'|^q` taken as `qs`-convex, when `qs <= 1`.
    pub rhs_qs: Option<f64>,
    pub case_id: CaseId,
    pub holds: bool,
}

const HOLD_TOL: f64 = 1e-10;

fn check_inputs(a: f64, b: f64, s: f64, q: f64) -> Result<()> {
    check_pair(a, b)?;
    if !(MIN_S..=1.0).contains(&s) {
        return domain(format!("s must lie in (0, 1], got {s}"));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return domain(format!("q must be >= 1, got {q}"));
    }
    Ok(())
}

/// `|lambda A_alpha(a^(s+1), b^(s+1)) + (1-lambda) A_alpha(a,b)^(s+1) - L_(s+1)(a,b)^(s+1)|`.
fn mean_gap(a: f64, b: f64, params: &RuleParams, s: f64) -> f64 {
    let (al, l) = (params.alpha(), params.lambda());
    let aa = al * a + (1.0 - al) * b;
    let endpoint = al * a.powf(s + 1.0) + (1.0 - al) * b.powf(s + 1.0);
    (l * endpoint + (1.0 - l) * aa.powf(s + 1.0) - p_log_pow(a, b, s + 1.0)).abs()
}

fn pm_factor(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        1.0
    } else {
        x.max(0.0).powf(1.0 - 1.0 / q)
    }
}

fn power_mean_rhs(a: f64, b: f64, params: &RuleParams, s: f64, sq: f64, q: f64) -> Result<(f64, CaseId)> {
    let left = kernel_moments(params, s)?;
    let right = kernel_moments(&params.mirrored(), s)?;
    let (xa, xb) = (a.powf(sq), b.powf(sq));
    let mut best: Option<(f64, CaseId)> = None;
    for case in classify_case(params).applicable {
        let (lb, rb) = case.branches();
        let tl = pm_factor(left.weight(lb), q)
            * (left.t_moment(lb) * xb + left.one_minus_t_moment(lb) * xa).max(0.0).powf(1.0 / q);
        let tr = pm_factor(right.weight(rb), q)
            * (right.one_minus_t_moment(rb) * xb + right.t_moment(rb) * xa).max(0.0).powf(1.0 / q);
        let v = (b - a) * (s + 1.0) * (tl + tr);
        if best.is_none_or(|(bv, _)| v < bv) {
            best = Some((v, case));
        }
    }
    Ok(best.expect("at least one case applies"))
}

/// The power-mean inequality for `f(t) = t^(s+1)` on `[a, b]`, `q >= 1`.
///
/// `|f'|^q = (s+1)^q t^(qs)` is s-convex for every `s in (0, 1]` (it is
/// `qs`-convex when `qs <= 1` and convex otherwise), so the s-based right
/// side is always valid.
pub fn proposition_power_mean_check(
    a: f64,
    b: f64,
    params: &RuleParams,
    s: f64,
    q: f64,
) -> Result<PropositionReport> {
    check_inputs(a, b, s, q)?;
    let lhs = mean_gap(a, b, params, s);
    let (rhs, case_id) = power_mean_rhs(a, b, params, s, s * q, q)?;
    let rhs_qs = if q * s <= 1.0 { Some(power_mean_rhs(a, b, params, q * s, s * q, q)?.0) } else { None };
    Ok(PropositionReport { lhs, rhs, rhs_qs, case_id, holds: lhs <= rhs + HOLD_TOL })
}

fn holder_rhs(a: f64, b: f64, params: &RuleParams, s: f64, class_s: f64, q: f64) -> Result<(f64, CaseId)> {
    let p = q / (q - 1.0);
    let al = params.alpha();
    let aa = al * a + (1.0 - al) * b;
    let c_s = (1.0 - al) * (aa.powf(s * q) + a.powf(s * q));
    let d_s = al * (aa.powf(s * q) + b.powf(s * q));
    let left = holder_moments(params, p)?;
    let right = holder_moments(&params.mirrored(), p)?;
    let scale = (b - a) * (1.0 / (p + 1.0)).powf(1.0 / p) * (s + 1.0) * (1.0 / (class_s + 1.0)).powf(1.0 / q);
    let mut best: Option<(f64, CaseId)> = None;
    for case in classify_case(params).applicable {
        let (lb, rb) = case.branches();
        let v = scale
            * (left.on(lb).max(0.0).powf(1.0 / p) * c_s.powf(1.0 / q)
                + right.on(rb).max(0.0).powf(1.0 / p) * d_s.powf(1.0 / q));
        if best.is_none_or(|(bv, _)| v < bv) {
            best = Some((v, case));
        }
    }
    Ok(best.expect("at least one case applies"))
}

/// The Hoelder inequality for `f(t) = t^(s+1)` on `[a, b]`, `q > 1`.
pub fn proposition_holder_check(
    a: f64,
    b: f64,
    params: &RuleParams,
    s: f64,
    q: f64,
) -> Result<PropositionReport> {
    check_inputs(a, b, s, q)?;
    if q <= 1.0 {
        return domain(format!("the Hoelder form needs q > 1, got {q}"));
    }
    let lhs = mean_gap(a, b, params, s);
    let (rhs, case_id) = holder_rhs(a, b, params, s, s, q)?;
    let rhs_qs = if q * s <= 1.0 { Some(holder_rhs(a, b, params, s, q * s, q)?.0) } else { None };
    Ok(PropositionReport { lhs, rhs, rhs_qs, case_id, holds: lhs <= rhs + HOLD_TOL })
}

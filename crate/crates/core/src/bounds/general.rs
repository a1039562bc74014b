//! The three general estimates of `|I_f(lambda, alpha, a, b)|`.

use crate::bounds::bound::{tightest, Bound, Method};
use crate::bounds::case::{classify_case, CaseId};
use crate::bounds::moments::{holder_moments, kernel_moments};
use crate::error::{domain, Error, Result};
use crate::params::{ConvexityClass, ConvexityMode, DerivativeData, Interval, RuleParams};

/// Slack allowed before a consumed coefficient counts as negative.
const NEG_SLACK: f64 = 1e-13;

fn nonneg(name: &'static str, v: f64) -> Result<f64> {
    if v < -NEG_SLACK || v.is_nan() {
        return Err(Error::NegativeMoment { name, value: v });
    }
    Ok(v.max(0.0))
}

/// `x^(1 - 1/q)` with the `q = 1` factor taken as exactly 1.
fn power_mean_weight(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        1.0
    } else {
        x.powf(1.0 - 1.0 / q)
    }
}

fn root(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        x
    } else {
        x.powf(1.0 / q)
    }
}

fn require_mode(cls: &ConvexityClass, mode: ConvexityMode, what: &str) -> Result<()> {
    if cls.mode() != mode {
        return domain(format!("{what} needs |f'|^q {mode}, got {}", cls.mode()));
    }
    Ok(())
}

fn evaluate_cases<F>(params: &RuleParams, mut eval: F) -> Result<Bound>
where
    F: FnMut(CaseId) -> Result<Bound>,
{
    let cls = classify_case(params);
    let evaluated = cls.applicable.iter().map(|&c| eval(c)).collect::<Result<Vec<_>>>()?;
    Ok(tightest(evaluated))
}

/// Power-mean estimate for s-convex `|f'|^q`, `q >= 1`, in the case(s)
/// selected by [`classify_case`]. On a case boundary every adjacent case is
/// evaluated and the smallest value returned.
pub fn bound_power_mean(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
) -> Result<Bound> {
    evaluate_cases(params, |c| bound_power_mean_case(params, cls, d, iv, c))
}

/// Power-mean estimate forced into `case`, without checking that the case's
/// ordering holds.
pub fn bound_power_mean_case(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
    case: CaseId,
) -> Result<Bound> {
    require_mode(cls, ConvexityMode::SConvex, "the power-mean estimate")?;
    let (s, q) = (cls.s(), cls.q());
    let left = kernel_moments(params, s)?;
    let right = kernel_moments(&params.mirrored(), s)?;
    let (lb, rb) = case.branches();
    let xa = d.d_a.powf(q);
    let xb = d.d_b.powf(q);

    let g_l = nonneg("left kernel mass", left.weight(lb))?;
    let cb_l = nonneg("left t^s moment", left.t_moment(lb))?;
    let ca_l = nonneg("left (1-t)^s moment", left.one_minus_t_moment(lb))?;
    // on the right half t^s and (1-t)^s trade places under t -> 1 - t
    let g_r = nonneg("right kernel mass", right.weight(rb))?;
    let cb_r = nonneg("right (1-t)^s moment", right.one_minus_t_moment(rb))?;
    let ca_r = nonneg("right t^s moment", right.t_moment(rb))?;

    let t_left = power_mean_weight(g_l, q) * root(cb_l * xb + ca_l * xa, q);
    let t_right = power_mean_weight(g_r, q) * root(cb_r * xb + ca_r * xa, q);

    Ok(Bound::assemble(
        Method::PowerMean,
        case,
        iv.width(),
        &[("left", t_left), ("right", t_right)],
        &[
            ("left.weight", g_l),
            ("left.b", cb_l),
            ("left.a", ca_l),
            ("right.weight", g_r),
            ("right.b", cb_r),
            ("right.a", ca_r),
        ],
    ))
}

fn eps_pair(params: &RuleParams, p: f64, case: CaseId) -> Result<(f64, f64)> {
    let (lb, rb) = case.branches();
    let left = holder_moments(params, p)?;
    let right = holder_moments(&params.mirrored(), p)?;
    Ok((nonneg("left eps", left.on(lb))?, nonneg("right eps", right.on(rb))?))
}

/// Hoelder estimate for s-convex `|f'|^q`, `q > 1`.
pub fn bound_holder_convex(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
) -> Result<Bound> {
    evaluate_cases(params, |c| bound_holder_convex_case(params, cls, d, iv, c))
}

pub fn bound_holder_convex_case(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
    case: CaseId,
) -> Result<Bound> {
    require_mode(cls, ConvexityMode::SConvex, "the convex Hoelder estimate")?;
    let p = cls.conjugate()?;
    let (s, q) = (cls.s(), cls.q());
    let al = params.alpha();
    let mix = d.mix()?.powf(q);
    let c_f = (1.0 - al) * (mix + d.d_a.powf(q));
    let d_f = al * (mix + d.d_b.powf(q));
    let (e_l, e_r) = eps_pair(params, p, case)?;

    let scale = iv.width() * (1.0 / (p + 1.0)).powf(1.0 / p) * (1.0 / (s + 1.0)).powf(1.0 / q);
    let t_left = e_l.powf(1.0 / p) * c_f.powf(1.0 / q);
    let t_right = e_r.powf(1.0 / p) * d_f.powf(1.0 / q);
    Ok(Bound::assemble(
        Method::HolderConvex,
        case,
        scale,
        &[("left", t_left), ("right", t_right)],
        &[("left.eps", e_l), ("right.eps", e_r), ("C_f", c_f), ("D_f", d_f)],
    ))
}

/// Hoelder estimate for s-concave `|f'|^q`, `q > 1`.
pub fn bound_holder_concave(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
) -> Result<Bound> {
    evaluate_cases(params, |c| bound_holder_concave_case(params, cls, d, iv, c))
}

pub fn bound_holder_concave_case(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
    case: CaseId,
) -> Result<Bound> {
    require_mode(cls, ConvexityMode::SConcave, "the concave Hoelder estimate")?;
    let p = cls.conjugate()?;
    let (s, q) = (cls.s(), cls.q());
    let al = params.alpha();
    let e_f = (1.0 - al) * d.lo()?.powf(q);
    let f_f = al * d.hi()?.powf(q);
    let (e_l, e_r) = eps_pair(params, p, case)?;

    let scale = iv.width() * 2f64.powf((s - 1.0) / q) * (1.0 / (p + 1.0)).powf(1.0 / p);
    let t_left = e_l.powf(1.0 / p) * e_f.powf(1.0 / q);
    let t_right = e_r.powf(1.0 / p) * f_f.powf(1.0 / q);
    Ok(Bound::assemble(
        Method::HolderConcave,
        case,
        scale,
        &[("left", t_left), ("right", t_right)],
        &[("left.eps", e_l), ("right.eps", e_r), ("E_f", e_f), ("F_f", f_f)],
    ))
}

//! Earlier bounds that the general estimates refine, written out exactly as
//! they were published so they can be compared against the new ones.

use crate::bounds::bound::{tightest, Bound, Method};
use crate::bounds::case::{classify_case, CaseId};
use crate::error::{domain, Result};
use crate::params::{ConvexityClass, ConvexityMode, DerivativeData, Interval, RuleParams};

fn require_convex(cls: &ConvexityClass) -> Result<()> {
    if cls.mode() != ConvexityMode::SConvex {
        return domain("earlier bounds assume |f'|^q s-convex");
    }
    Ok(())
}

fn pm_weight(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        1.0
    } else {
        x.max(0.0).powf(1.0 - 1.0 / q)
    }
}

/// Coefficients of the convex (`s = 1`) three-point bound, as published.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexCoefficients {
    pub gamma1: f64,
    pub gamma2: f64,
    pub upsilon1: f64,
    pub upsilon2: f64,
    pub mu: [f64; 4],
    pub eta: [f64; 4],
}

impl ConvexCoefficients {
    pub fn new(params: &RuleParams) -> Self {
        let a = params.alpha();
        let l = params.lambda();
        let al = a * l;
        let om = 1.0 - a;
        let r = 1.0 - l * om;
        let lo = l * om;

        let gamma1 = om * (al - om / 2.0);
        let gamma2 = al * al - gamma1;
        let upsilon1 = (1.0 - om * om) / 2.0 - a * r;
        let upsilon2 = (1.0 + om * om) / 2.0 - (l + 1.0) * om * r;

        let mu1 = (al.powi(3) + om.powi(3)) / 3.0 - al * om * om / 2.0;
        let mu2 = (1.0 + a.powi(3) + (1.0 - al).powi(3)) / 3.0 - (1.0 - al) / 2.0 * (1.0 + a * a);
        let mu3 = al * om * om / 2.0 - om.powi(3) / 3.0;
        let mu4 = (al - 1.0) * (1.0 - a * a) / 2.0 + (1.0 - a.powi(3)) / 3.0;

        let eta1 = (1.0 - om.powi(3)) / 3.0 - r / 2.0 * a * (2.0 - a);
        let eta2 = lo * a * a / 2.0 - a.powi(3) / 3.0;
        let eta3 = r.powi(3) / 3.0 - r / 2.0 * (1.0 + om * om) + (1.0 + om.powi(3)) / 3.0;
        let eta4 = lo.powi(3) / 3.0 - lo * a * a / 2.0 + a.powi(3) / 3.0;

        ConvexCoefficients {
            gamma1,
            gamma2,
            upsilon1,
            upsilon2,
            mu: [mu1, mu2, mu3, mu4],
            eta: [eta1, eta2, eta3, eta4],
        }
    }
}

/// The earlier three-point bound for convex `|f'|^q`, `q >= 1`. Only
/// defined for `s = 1`.
pub fn convex_power_mean(
    params: &RuleParams,
    cls: &ConvexityClass,
    d: &DerivativeData,
    iv: &Interval,
) -> Result<Bound> {
    require_convex(cls)?;
    if cls.s() != 1.0 {
        return domain(format!("the convex three-point bound needs s = 1, got {}", cls.s()));
    }
    let k = ConvexCoefficients::new(params);
    let q = cls.q();
    let xa = d.d_a.powf(q);
    let xb = d.d_b.powf(q);
    let [mu1, mu2, mu3, mu4] = k.mu;
    let [eta1, eta2, eta3, eta4] = k.eta;
    let rt = |x: f64| if q == 1.0 { x } else { x.max(0.0).powf(1.0 / q) };

    let eval = |case: CaseId| {
        let (tl, tr) = match case {
            CaseId::I => (
                pm_weight(k.gamma2, q) * rt(mu1 * xb + mu2 * xa),
                pm_weight(k.upsilon2, q) * rt(eta3 * xb + eta4 * xa),
            ),
            CaseId::II => (
                pm_weight(k.gamma2, q) * rt(mu1 * xb + mu2 * xa),
                pm_weight(k.upsilon1, q) * rt(eta1 * xb + eta2 * xa),
            ),
            CaseId::III => (
                pm_weight(k.gamma1, q) * rt(mu3 * xb + mu4 * xa),
                pm_weight(k.upsilon2, q) * rt(eta3 * xb + eta4 * xa),
            ),
        };
        Bound::assemble(
            Method::ConvexPowerMean,
            case,
            iv.width(),
            &[("left", tl), ("right", tr)],
            &[("gamma1", k.gamma1), ("gamma2", k.gamma2), ("upsilon1", k.upsilon1), ("upsilon2", k.upsilon2)],
        )
    };
    let c = classify_case(params);
    Ok(tightest(c.applicable.iter().map(|&case| eval(case)).collect()))
}

/// Earlier midpoint bound, power-mean form, for s-convex `|f'|^q`, `q >= 1`.
pub fn prior_midpoint_power_mean(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require_convex(cls)?;
    let (s, q) = (cls.s(), cls.q());
    let xa = d.d_a.powf(q);
    let xb = d.d_b.powf(q);
    let w = 2f64.powf(1.0 - s);
    let scale = iv.width() / 8.0 * (2.0 / ((s + 1.0) * (s + 2.0))).powf(1.0 / q);
    let t1 = ((w + 1.0) * xb + w * xa).powf(1.0 / q);
    let t2 = ((w + 1.0) * xa + w * xb).powf(1.0 / q);
    Ok(Bound::assemble(
        Method::PriorMidpointPowerMean,
        CaseId::I,
        scale,
        &[("b-weighted", t1), ("a-weighted", t2)],
        &[],
    ))
}

/// Earlier midpoint bound, Hoelder form, for s-convex `|f'|^q`, `q > 1`.
pub fn prior_midpoint_holder(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require_convex(cls)?;
    let p = cls.conjugate()?;
    let (s, q) = (cls.s(), cls.q());
    let xa = d.d_a.powf(q);
    let xb = d.d_b.powf(q);
    let w = 2f64.powf(1.0 - s);
    let scale = iv.width() / 4.0
        * (1.0 / (p + 1.0)).powf(1.0 / p)
        * (1.0 / (s + 1.0)).powf(2.0 / q);
    let t1 = ((w + s + 1.0) * xa + w * xb).powf(1.0 / q);
    let t2 = ((w + s + 1.0) * xb + w * xa).powf(1.0 / q);
    Ok(Bound::assemble(
        Method::PriorMidpointHolder,
        CaseId::I,
        scale,
        &[("a-weighted", t1), ("b-weighted", t2)],
        &[],
    ))
}

/// Earlier Simpson bound for s-convex `|f'|^q`, `q > 1`. `d.d_mix` must be
/// `|f'((a+b)/2)|`.
pub fn prior_simpson_holder(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require_convex(cls)?;
    let p = cls.conjugate()?;
    let (s, q) = (cls.s(), cls.q());
    let m = d.mix()?.powf(q);
    let scale = iv.width() / 12.0 * ((1.0 + 2f64.powf(p + 1.0)) / (3.0 * (p + 1.0))).powf(1.0 / p);
    let t1 = ((m + d.d_a.powf(q)) / (s + 1.0)).powf(1.0 / q);
    let t2 = ((m + d.d_b.powf(q)) / (s + 1.0)).powf(1.0 / q);
    Ok(Bound::assemble(Method::PriorSimpsonHolder, CaseId::I, scale, &[("a-side", t1), ("b-side", t2)], &[]))
}

/// Earlier trapezoid bound for s-convex `|f'|^q` with `s in (0, 1)`, `q > 1`.
/// `d.d_mix` must be `|f'((a+b)/2)|`.
pub fn prior_trapezoid_holder(cls: &ConvexityClass, d: &DerivativeData, iv: &Interval) -> Result<Bound> {
    require_convex(cls)?;
    let (s, q) = (cls.s(), cls.q());
    if s >= 1.0 {
        return domain("the earlier trapezoid bound is stated for s in (0, 1) only");
    }
    cls.conjugate()?;
    let m = d.mix()?.powf(q);
    let scale = iv.width() / 2.0
        * ((q - 1.0) / (2.0 * (2.0 * q - 1.0))).powf((q - 1.0) / q)
        * (1.0 / (s + 1.0)).powf(1.0 / q);
    let t1 = (m + d.d_a.powf(q)).powf(1.0 / q);
    let t2 = (m + d.d_b.powf(q)).powf(1.0 / q);
    Ok(Bound::assemble(
        Method::PriorTrapezoidHolder,
        CaseId::I,
        scale,
        &[("a-side", t1), ("b-side", t2)],
        &[],
    ))
}

/// Classical Simpson estimate `(b-a)^4 / 2880 * sup |f''''|` for four times
/// differentiable `f`. Comparison constant only.
pub fn simpson_fourth_derivative_bound(sup_f4: f64, iv: &Interval) -> Result<f64> {
    if !(sup_f4.is_finite() && sup_f4 >= 0.0) {
        return domain(format!("sup |f''''| must be finite and >= 0, got {sup_f4}"));
    }
    Ok(iv.width().powi(4) / 2880.0 * sup_f4)
}

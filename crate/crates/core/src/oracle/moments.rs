//! Brute-force kernel moment integrals, independent of the closed forms.

use crate::error::{domain, Result};
use crate::oracle::quad::{integrate_with_breaks, QuadConfig};
use crate::params::RuleParams;

/// Tolerance used for moment integrals; two orders below the checks that
/// consume them.
pub const MOMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentKind {
    /// weight `1`
    Abs,
    /// weight `t^s`
    AbsTs,
    /// weight `(1-t)^s`
    AbsOneMinusTs,
    /// weight `|t - c|^(p-1)`, i.e. the integrand `|t - c|^p`
    AbsPow,
}

fn check(kind: MomentKind, x: f64) -> Result<()> {
    match kind {
        MomentKind::Abs => Ok(()),
        MomentKind::AbsTs | MomentKind::AbsOneMinusTs if x > 0.0 && x <= 1.0 => Ok(()),
        MomentKind::AbsPow if x > 1.0 && x.is_finite() => Ok(()),
        MomentKind::AbsPow => domain(format!("p must be > 1, got {x}")),
        _ => domain(format!("s must lie in (0, 1], got {x}")),
    }
}

fn weight(kind: MomentKind, x: f64, t: f64, kink: f64) -> f64 {
    match kind {
        MomentKind::Abs => 1.0,
        MomentKind::AbsTs => t.powf(x),
        MomentKind::AbsOneMinusTs => (1.0 - t).max(0.0).powf(x),
        MomentKind::AbsPow => (t - kink).abs().powf(x - 1.0),
    }
}

/// `int_0^{1-alpha} |t - alpha lambda| w(t) dt` by adaptive quadrature,
/// split at the kink. `s_or_p` is ignored for [`MomentKind::Abs`].
pub fn moment_integral_numeric(kind: MomentKind, params: &RuleParams, s_or_p: f64) -> Result<f64> {
    check(kind, s_or_p)?;
    let kink = params.alpha() * params.lambda();
    let upper = 1.0 - params.alpha();
    let f = |t: f64| (t - kink).abs() * weight(kind, s_or_p, t, kink);
    let cfg = QuadConfig { tol: MOMENT_TOL, ..Default::default() };
    Ok(integrate_with_breaks(f, 0.0, upper, &[kink], cfg)?.value)
}

/// `int_{1-alpha}^1 |t - 1 + lambda (1 - alpha)| w(t) dt`, integrated in the
/// original variable rather than through the `alpha -> 1 - alpha` mirror.
pub fn moment_integral_numeric_right(kind: MomentKind, params: &RuleParams, s_or_p: f64) -> Result<f64> {
    check(kind, s_or_p)?;
    let kink = 1.0 - params.lambda() * (1.0 - params.alpha());
    let lower = 1.0 - params.alpha();
    let f = |t: f64| (t - kink).abs() * weight(kind, s_or_p, t, kink);
    let cfg = QuadConfig { tol: MOMENT_TOL, ..Default::default() };
    Ok(integrate_with_breaks(f, lower, 1.0, &[kink], cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_values() {
        let p = RuleParams::SIMPSON;
        let v = moment_integral_numeric(MomentKind::Abs, &p, 0.0).unwrap();
        assert!((v - 5.0 / 72.0).abs() < 1e-13);
        let v = moment_integral_numeric(MomentKind::AbsTs, &p, 1.0).unwrap();
        assert!((v - 29.0 / 1296.0).abs() < 1e-13);
        let v = moment_integral_numeric(MomentKind::AbsPow, &p, 2.0).unwrap();
        assert!((v - 1.0 / 72.0).abs() < 1e-13);
    }

    #[test]
    fn right_half_mirrors_left_half() {
        let p = RuleParams::new(0.3, 0.6).unwrap();
        let r = moment_integral_numeric_right(MomentKind::AbsTs, &p, 0.4).unwrap();
        let l = moment_integral_numeric(MomentKind::AbsOneMinusTs, &p.mirrored(), 0.4).unwrap();
        assert!((r - l).abs() < 1e-11);
    }

    #[test]
    fn parameter_checks() {
        let p = RuleParams::SIMPSON;
        assert!(moment_integral_numeric(MomentKind::AbsPow, &p, 1.0).is_err());
        assert!(moment_integral_numeric(MomentKind::AbsTs, &p, 0.0).is_err());
        assert!(moment_integral_numeric(MomentKind::Abs, &p, -3.0).is_ok());
    }
}

//! Closed forms of the kernel moment integrals.
//!
//! With `c = alpha lambda` and `m = 1 - alpha`:
//!
//! ```text
//! int_0^m |t - c| dt          = gamma2 (c <= m) | gamma1 (c >= m)
//! int_0^m |t - c| t^s dt      = c1     (c <= m) | c3     (c >= m)
//! int_0^m |t - c| (1-t)^s dt  = c2     (c <= m) | c4     (c >= m)
//! int_0^m |t - c|^p dt        = eps1/(p+1) (c <= m) | eps2/(p+1) (c >= m)
//! ```
//!
//! The right-half integrals are the same expressions at `1 - alpha`.

use crate::bounds::case::Branch;
use crate::error::{domain, Result};
use crate::params::{RuleParams, MIN_S};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub gamma1: f64,
    pub gamma2: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl MomentSet {
    /// `int_0^{1-alpha} |t - alpha lambda| dt` on `branch`.
    pub fn weight(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Inner => self.gamma2,
            Branch::Outer => self.gamma1,
        }
    }

    /// `int_0^{1-alpha} |t - alpha lambda| t^s dt` on `branch`.
    pub fn t_moment(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Inner => self.c1,
            Branch::Outer => self.c3,
        }
    }

    /// `int_0^{1-alpha} |t - alpha lambda| (1-t)^s dt` on `branch`.
    pub fn one_minus_t_moment(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Inner => self.c2,
            Branch::Outer => self.c4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderMoments {
    pub eps1: f64,
    pub eps2: f64,
}

impl HolderMoments {
    /// `(p+1) int_0^{1-alpha} |t - alpha lambda|^p dt` on `branch`.
    pub fn on(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Inner => self.eps1,
            Branch::Outer => self.eps2,
        }
    }
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if !(s.is_finite() && s > 0.0 && s <= 1.0) {
        return domain(format!("s must lie in (0, 1], got {s}"));
    }
    if s < MIN_S {
        return domain(format!("s = {s:e} is below the accepted minimum {MIN_S:e}"));
    }
    Ok(())
}

/// `gamma_1, gamma_2, c_1 .. c_4` at `(alpha, lambda, s)`.
///
/// Every value is returned regardless of branch; `gamma1` is negative when
/// `alpha lambda < (1 - alpha) / 2`, which only matters off its branch.
pub fn kernel_moments(params: &RuleParams, s: f64) -> Result<MomentSet> {
    check_s(s)?;
    let al = params.alpha();
    let c = al * params.lambda();
    let m = 1.0 - al;
    let big_c = 1.0 - c;
    let s1 = s + 1.0;
    let s2 = s + 2.0;

    let gamma1 = m * (c - 0.5 * m);
    let gamma2 = c * c - gamma1;

    let c1 = c.powf(s2) * 2.0 / (s1 * s2) - c * m.powf(s1) / s1 + m.powf(s2) / s2;
    let c2 = big_c.powf(s2) * 2.0 / (s1 * s2) - big_c * (1.0 + al.powf(s1)) / s1
        + (1.0 + al.powf(s2)) / s2;
    let c3 = c * m.powf(s1) / s1 - m.powf(s2) / s2;
    let c4 = (c - 1.0) * (1.0 - al.powf(s1)) / s1 + (1.0 - al.powf(s2)) / s2;

    Ok(MomentSet { gamma1, gamma2, c1, c2, c3, c4 })
}

/// `sign(x) |x|^e`, so that off-branch values stay finite.
fn signed_pow(x: f64, e: f64) -> f64 {
    x.signum() * x.abs().powf(e)
}

/// `eps_1, eps_2` at `(alpha, lambda, p)`.
pub fn holder_moments(params: &RuleParams, p: f64) -> Result<HolderMoments> {
    if !(p.is_finite() && p > 1.0) {
        return domain(format!("p must be a finite value > 1, got {p}"));
    }
    let al = params.alpha();
    let c = al * params.lambda();
    let e = p + 1.0;
    let eps1 = c.powf(e) + signed_pow(1.0 - al - c, e);
    let eps2 = c.powf(e) - signed_pow(c - 1.0 + al, e);
    Ok(HolderMoments { eps1, eps2 })
}

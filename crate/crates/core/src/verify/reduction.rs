//! Equalities between the general estimates and their special cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::classical::{convex_power_mean, prior_simpson_holder};
use crate::bounds::named::{
    midpoint_concave_display, midpoint_concave_unit_display, midpoint_holder_display, midpoint_power_mean_display,
    simpson_holder_display, simpson_power_mean_display, trapezoid_concave_display, trapezoid_concave_unit_display,
    trapezoid_holder_display, trapezoid_power_mean_display, trapezoid_power_mean_printed,
};
use crate::bounds::{bound_holder_concave, bound_holder_convex, bound_power_mean, Bound};
use crate::error::Result;
use crate::params::{ConvexityClass, DerivativeData, Interval, RuleParams};

/// Agreement tolerance, relative to `max(1, |value|)`.
pub const EQUALITY_TOL: f64 = 1e-12;

/// One compared pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityCheck {
    pub name: &'static str,
    pub alpha: f64,
    pub lambda: f64,
    pub s: f64,
    pub q: f64,
    pub general: f64,
    pub special: f64,
}

impl EqualityCheck {
    pub fn rel_diff(&self) -> f64 {
        (self.general - self.special).abs() / self.general.abs().max(self.special.abs()).max(1.0)
    }

    pub fn holds(&self) -> bool {
        self.rel_diff() <= EQUALITY_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub checks: Vec<EqualityCheck>,
}

impl ReductionReport {
    pub fn failures(&self) -> impl Iterator<Item = &EqualityCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn max_rel_diff(&self) -> f64 {
        self.checks.iter().map(EqualityCheck::rel_diff).fold(0.0, f64::max)
    }

    /// Checks whose name starts with `prefix`.
    pub fn group<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a EqualityCheck> {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }
}

fn data(rng: &mut ChaCha8Rng) -> DerivativeData {
    let mut v = || rng.gen_range(0.0..3.0);
    DerivativeData::new(v(), v())
        .and_then(|d| d.with_mix(v()))
        .and_then(|d| d.with_quarters(v(), v()))
        .expect("sampled magnitudes are finite and nonnegative")
}

fn push(
    out: &mut Vec<EqualityCheck>,
    name: &'static str,
    p: &RuleParams,
    cls: &ConvexityClass,
    general: Result<Bound>,
    special: Result<Bound>,
) -> Result<()> {
    out.push(EqualityCheck {
        name,
        alpha: p.alpha(),
        lambda: p.lambda(),
        s: cls.s(),
        q: cls.q(),
        general: general?.value,
        special: special?.value,
    });
    Ok(())
}

/// The `s = 1` power-mean estimate against the convex three-point bound on
/// a 9 x 9 x 3 grid of `(alpha, lambda, q)` with random endpoint data.
pub fn convex_reduction(seed: u64) -> Result<Vec<EqualityCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iv = Interval::new(0.0, 1.0)?;
    let mut out = Vec::new();
    for i in 0..9 {
        for j in 0..9 {
            let p = RuleParams::new(i as f64 / 8.0, j as f64 / 8.0)?;
            for q in [1.0, 2.0, 3.0] {
                let cls = ConvexityClass::convex(1.0, q)?;
                let d = data(&mut rng);
                push(&mut out, "convex-reduction", &p, &cls, bound_power_mean(&p, &cls, &d, &iv), convex_power_mean(&p, &cls, &d, &iv))?;
            }
        }
    }
    Ok(out)
}

const S_GRID: [f64; 6] = [0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
const Q_GRID: [f64; 4] = [1.0, 1.5, 2.0, 3.0];

/// General estimates at the midpoint, Simpson and trapezoid weights against
/// their written-out forms.
pub fn specialization_checks(seed: u64) -> Result<Vec<EqualityCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iv = Interval::new(0.0, 1.0)?;
    let (mid, simp, trap) = (RuleParams::MIDPOINT, RuleParams::SIMPSON, RuleParams::TRAPEZOID);
    let mut out = Vec::new();
    for s in S_GRID {
        for q in Q_GRID {
            let cls = ConvexityClass::convex(s, q)?;
            let d = data(&mut rng);
            push(&mut out, "power-mean/simpson", &simp, &cls, bound_power_mean(&simp, &cls, &d, &iv), simpson_power_mean_display(&cls, &d, &iv))?;
            push(&mut out, "power-mean/midpoint", &mid, &cls, bound_power_mean(&mid, &cls, &d, &iv), midpoint_power_mean_display(&cls, &d, &iv))?;
            push(&mut out, "power-mean/trapezoid", &trap, &cls, bound_power_mean(&trap, &cls, &d, &iv), trapezoid_power_mean_display(&cls, &d, &iv))?;
            if s == 1.0 {
                push(&mut out, "power-mean/trapezoid-printed", &trap, &cls, bound_power_mean(&trap, &cls, &d, &iv), trapezoid_power_mean_printed(&cls, &d, &iv))?;
            }
            if q == 1.0 {
                continue;
            }
            // Simpson's interior node is the midpoint, where d_mix is sampled
            push(&mut out, "holder-convex/simpson", &simp, &cls, bound_holder_convex(&simp, &cls, &d, &iv), simpson_holder_display(&cls, &d, &iv))?;
            push(&mut out, "holder-convex/simpson-prior", &simp, &cls, simpson_holder_display(&cls, &d, &iv), prior_simpson_holder(&cls, &d, &iv))?;
            push(&mut out, "holder-convex/midpoint", &mid, &cls, bound_holder_convex(&mid, &cls, &d, &iv), midpoint_holder_display(&cls, &d, &iv))?;
            push(&mut out, "holder-convex/trapezoid", &trap, &cls, bound_holder_convex(&trap, &cls, &d, &iv), trapezoid_holder_display(&cls, &d, &iv))?;
            let cc = ConvexityClass::concave(s, q)?;
            push(&mut out, "holder-concave/trapezoid", &trap, &cc, bound_holder_concave(&trap, &cc, &d, &iv), trapezoid_concave_display(&cc, &d, &iv))?;
            push(&mut out, "holder-concave/midpoint", &mid, &cc, bound_holder_concave(&mid, &cc, &d, &iv), midpoint_concave_display(&cc, &d, &iv))?;
            if s == 1.0 {
                push(&mut out, "holder-concave/trapezoid-unit", &trap, &cc, bound_holder_concave(&trap, &cc, &d, &iv), trapezoid_concave_unit_display(&cc, &d, &iv))?;
                push(&mut out, "holder-concave/midpoint-unit", &mid, &cc, bound_holder_concave(&mid, &cc, &d, &iv), midpoint_concave_unit_display(&cc, &d, &iv))?;
            }
        }
    }
    Ok(out)
}

/// Every reduction and specialization equality.
pub fn reduction_check() -> Result<ReductionReport> {
    let mut checks = convex_reduction(0x5eed)?;
    checks.extend(specialization_checks(0x5eed + 1)?);
    Ok(ReductionReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_equalities_hold() {
        let r = reduction_check().unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert_eq!(r.group("convex-reduction").count(), 243);
    }

    #[test]
    fn spot_check_grid_point() {
        let p = RuleParams::new(0.3, 0.6).unwrap();
        let cls = ConvexityClass::convex(1.0, 2.0).unwrap();
        let d = DerivativeData::new(0.4, 1.7).unwrap();
        let iv = Interval::new(1.0, 2.5).unwrap();
        let g = bound_power_mean(&p, &cls, &d, &iv).unwrap().value;
        let c = convex_power_mean(&p, &cls, &d, &iv).unwrap().value;
        assert!((g - c).abs() < 1e-14);
    }
}

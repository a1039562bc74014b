//! The new estimates against the earlier single-rule bounds they improve on.

use crate::bounds::classical::{prior_midpoint_power_mean, prior_trapezoid_holder};
use crate::bounds::{bound_holder_convex, bound_power_mean, Rule};
use crate::error::Result;
use crate::params::{ConvexityClass, DerivativeData, Interval};

/// One grid point of a comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub label: &'static str,
    pub alpha: f64,
    pub lambda: f64,
    pub s: f64,
    pub q: f64,
    pub bound_new: f64,
    pub bound_classical: f64,
    /// `bound_new / bound_classical`
    pub ratio: f64,
    /// The new bound came out larger than the earlier one.
    pub anomaly: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareGrid {
    pub s_values: Vec<f64>,
    pub q_values: Vec<f64>,
    pub data: Vec<DerivativeData>,
    pub interval: Interval,
}

impl Default for CompareGrid {
    fn default() -> Self {
        let dd = |a: f64, b: f64, m: f64| DerivativeData::new(a, b).and_then(|d| d.with_mix(m)).expect("valid data");
        CompareGrid {
            s_values: (1..=20).map(|k| k as f64 * 0.05).collect(),
            q_values: vec![1.0, 1.5, 2.0, 3.0],
            data: vec![dd(1.0, 1.0, 1.0), dd(1.0, 2.0, 1.5), dd(0.0, 2.0, 1.0), dd(2.5, 0.3, 0.9)],
            interval: Interval::new(0.0, 1.0).expect("unit interval"),
        }
    }
}

/// Relative slack before a larger new bound counts as an anomaly.
const ANOMALY_SLACK: f64 = 1e-12;

fn row(label: &'static str, rule: Rule, cls: &ConvexityClass, new: f64, old: f64) -> CompareRow {
    let p = rule.params();
    CompareRow {
        label,
        alpha: p.alpha(),
        lambda: p.lambda(),
        s: cls.s(),
        q: cls.q(),
        bound_new: new,
        bound_classical: old,
        ratio: if old > 0.0 { new / old } else if new == 0.0 { 1.0 } else { f64::INFINITY },
        anomaly: new > old * (1.0 + ANOMALY_SLACK) + ANOMALY_SLACK,
    }
}

/// Midpoint power-mean estimate against the earlier midpoint bound, and the
/// trapezoid Hoelder estimate against the earlier trapezoid bound (`s < 1`).
pub fn tightness_compare(grid: &CompareGrid) -> Result<Vec<CompareRow>> {
    let iv = &grid.interval;
    let mut rows = Vec::new();
    for &s in &grid.s_values {
        for &q in &grid.q_values {
            let cls = ConvexityClass::convex(s, q)?;
            for d in &grid.data {
                let new = bound_power_mean(&Rule::Midpoint.params(), &cls, d, iv)?.value;
                let old = prior_midpoint_power_mean(&cls, d, iv)?.value;
                rows.push(row("midpoint/power-mean", Rule::Midpoint, &cls, new, old));
                if q > 1.0 && s < 1.0 {
                    let new = bound_holder_convex(&Rule::Trapezoid.params(), &cls, d, iv)?.value;
                    let old = prior_trapezoid_holder(&cls, d, iv)?.value;
                    rows.push(row("trapezoid/holder", Rule::Trapezoid, &cls, new, old));
                }
            }
        }
    }
    Ok(rows)
}

/// The two coefficient inequalities behind the midpoint improvement at one
/// `s`: `(s+1)/2 <= 1` and `(2^(s+2) - s - 3)/2 <= (2^(1-s) + 1)/2^(1-s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientCheck {
    pub s: f64,
    pub near: f64,
    pub far: f64,
    pub far_classical: f64,
}

impl CoefficientCheck {
    pub fn holds(&self) -> bool {
        self.near <= 1.0 && self.far <= self.far_classical
    }
}

/// Coefficient inequalities at `s = k/n`, `k = 1..=n`.
pub fn improvement_coefficients(n: usize) -> Vec<CoefficientCheck> {
    (1..=n)
        .map(|k| {
            let s = k as f64 / n as f64;
            let w = 2f64.powf(1.0 - s);
            CoefficientCheck {
                s,
                near: (s + 1.0) / 2.0,
                far: (2f64.powf(s + 2.0) - s - 3.0) / 2.0,
                far_classical: (w + 1.0) / w,
            }
        })
        .collect()
}

//! Grid sampling of the s-convexity inequality
//! `g(t x + (1-t) y) <= t^s g(x) + (1-t)^s g(y)`.

use crate::params::Interval;

/// Default grid resolution per axis.
pub const DEFAULT_PROBE_N: usize = 41;

/// Absolute slack, scaled by `max(1, |rhs|)` at each sample.
pub const PROBE_SLACK: f64 = 1e-12;

/// A sample at which the inequality failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    /// `g(t x + (1-t) y)`
    pub lhs: f64,
    /// `t^s g(x) + (1-t)^s g(y)`
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

fn probe<G: Fn(f64) -> f64>(g: G, s: f64, iv: &Interval, n: usize, concave: bool) -> Verdict {
    let n = n.max(2);
    let gx: Vec<(f64, f64)> = grid(iv.a(), iv.b(), n).map(|x| (x, g(x))).collect();
    for &(x, fx) in &gx {
        for &(y, fy) in &gx {
            for t in grid(0.0, 1.0, n) {
                let lhs = g(t * x + (1.0 - t) * y);
                let rhs = t.powf(s) * fx + (1.0 - t).powf(s) * fy;
                let slack = PROBE_SLACK * rhs.abs().max(1.0);
                let bad = if concave { lhs < rhs - slack } else { lhs > rhs + slack };
                if bad || lhs.is_nan() || rhs.is_nan() {
                    return Verdict::Fail(Witness { x, y, t, lhs, rhs });
                }
            }
        }
    }
    Verdict::Pass
}

/// Checks s-convexity of `g` on an `n x n x n` grid of `(x, y, t)`.
pub fn sconvexity_probe<G: Fn(f64) -> f64>(g: G, s: f64, iv: &Interval, n: usize) -> Verdict {
    probe(g, s, iv, n, false)
}

/// Same grid with the inequality reversed.
pub fn sconcavity_probe<G: Fn(f64) -> f64>(g: G, s: f64, iv: &Interval, n: usize) -> Verdict {
    probe(g, s, iv, n, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn power_family_passes() {
        for s in [0.1, 0.5, 0.9] {
            assert!(sconvexity_probe(|t: f64| t.powf(s), s, &unit(), DEFAULT_PROBE_N).passed());
        }
        assert!(sconvexity_probe(|t| t, 1.0, &unit(), DEFAULT_PROBE_N).passed());
    }

    #[test]
    fn concave_counterexample_has_witness() {
        match sconvexity_probe(|t| -t * t, 1.0, &unit(), DEFAULT_PROBE_N) {
            Verdict::Fail(w) => assert!(w.lhs > w.rhs),
            Verdict::Pass => panic!("-t^2 is not convex"),
        }
    }

    #[test]
    fn reversed_probe() {
        assert!(sconcavity_probe(|t| t, 1.0, &unit(), 21).passed());
        assert!(sconcavity_probe(f64::sqrt, 1.0, &unit(), 21).passed());
        assert!(!sconcavity_probe(|t| t * t, 1.0, &unit(), 21).passed());
        // a positive function is never s-concave for s < 1 (take x = y)
        let iv = Interval::new(1.0, 2.0).unwrap();
        assert!(!sconcavity_probe(|t| t, 0.5, &iv, 5).passed());
    }
}

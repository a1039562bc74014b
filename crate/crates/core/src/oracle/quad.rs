//! Globally adaptive Simpson integration with Richardson extrapolation.
//!
//! Each panel carries a three-point and a composite five-point Simpson
//! value; the extrapolated value `S2 + (S2 - S1)/15` is summed and the
//! unextrapolated gap `|S2 - S1|` is used as the panel error estimate, which
//! stays an upper bound even where the integrand has an endpoint power
//! singularity in a derivative. The panel with the largest estimate is
//! bisected until the estimates sum below the tolerance.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_DEPTH: u32 = 40;
/// Every initial panel is split into `2^MIN_DEPTH` pieces before any
/// stopping test, so a lucky agreement of the two Simpson values on one
/// coarse panel cannot end the integration.
pub const MIN_DEPTH: u32 = 2;
const MAX_EVALUATIONS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub tol: f64,
    pub max_depth: u32,
    pub min_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { tol: DEFAULT_TOL, max_depth: MAX_DEPTH, min_depth: MIN_DEPTH }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    // f at a, a+h/4, a+h/2, a+3h/4, b
    f: [f64; 5],
    value: f64,
    err: f64,
    depth: u32,
    // insertion order, keeps pops deterministic on equal errors
    seq: u64,
}

impl Panel {
    fn new(a: f64, b: f64, f: [f64; 5], depth: u32, seq: u64) -> Panel {
        let h = b - a;
        let s1 = h / 6.0 * (f[0] + 4.0 * f[2] + f[4]);
        let s2 = h / 12.0 * (f[0] + 4.0 * f[1] + 2.0 * f[2] + 4.0 * f[3] + f[4]);
        Panel { a, b, f, value: s2 + (s2 - s1) / 15.0, err: (s2 - s1).abs(), depth, seq }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    integrate_with_breaks(f, a, b, &[], QuadConfig { tol, ..Default::default() })
}

/// Like [`integrate`], with mandatory split points (kinks of the integrand).
/// Break points outside `(a, b)` are ignored.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: QuadConfig,
) -> Result<QuadResult> {
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return domain(format!("tolerance must be positive, got {}", cfg.tol));
    }
    if !(a.is_finite() && b.is_finite()) {
        return domain(format!("integration limits must be finite, got [{a}, {b}]"));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, abs_error_estimate: 0.0, evaluations: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut knots = vec![lo];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > lo && x < hi).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    knots.extend(inner);
    knots.push(hi);

    let evals = Cell::new(0usize);
    let eval = |x: f64| {
        evals.set(evals.get() + 1);
        f(x)
    };
    let mut seq = 0u64;
    let mut heap = BinaryHeap::new();
    let pieces = 1u32 << cfg.min_depth.min(cfg.max_depth).min(16);
    for w in knots.windows(2) {
        for k in 0..pieces {
            let pa = w[0] + (w[1] - w[0]) * f64::from(k) / f64::from(pieces);
            let pb = if k + 1 == pieces { w[1] } else { w[0] + (w[1] - w[0]) * f64::from(k + 1) / f64::from(pieces) };
            let h = pb - pa;
            let fs = [eval(pa), eval(pa + 0.25 * h), eval(pa + 0.5 * h), eval(pa + 0.75 * h), eval(pb)];
            heap.push(Panel::new(pa, pb, fs, cfg.min_depth, seq));
            seq += 1;
        }
    }

    // Panels that hit the depth limit are parked here and still counted.
    let mut frozen: Vec<Panel> = Vec::new();
    let mut total_err: f64 = heap.iter().map(|p| p.err).sum();
    loop {
        if total_err <= cfg.tol {
            // the running total drifts; confirm before stopping
            total_err = heap.iter().chain(frozen.iter()).map(|p| p.err).sum();
            if total_err <= cfg.tol {
                break;
            }
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= cfg.max_depth || evals.get() >= MAX_EVALUATIONS {
            frozen.push(worst);
            if evals.get() >= MAX_EVALUATIONS {
                frozen.extend(heap.drain());
            }
            continue;
        }
        let m = 0.5 * (worst.a + worst.b);
        let h = 0.5 * (worst.b - worst.a);
        let left = [
            worst.f[0],
            eval(worst.a + 0.25 * h),
            worst.f[1],
            eval(worst.a + 0.75 * h),
            worst.f[2],
        ];
        let right = [worst.f[2], eval(m + 0.25 * h), worst.f[3], eval(m + 0.75 * h), worst.f[4]];
        let pl = Panel::new(worst.a, m, left, worst.depth + 1, seq);
        let pr = Panel::new(m, worst.b, right, worst.depth + 1, seq + 1);
        total_err += pl.err + pr.err - worst.err;
        heap.push(pl);
        heap.push(pr);
        seq += 2;
    }

    // Summation in position order so the result does not depend on heap layout.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let err: f64 = panels.iter().map(|p| p.err).sum();
    let res = QuadResult { value: sign * value, abs_error_estimate: err, evaluations: evals.get() };
    if !value.is_finite() || err > cfg.tol {
        return Err(Error::NonConvergence(res));
    }
    Ok(res)
}

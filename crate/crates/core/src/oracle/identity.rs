//! Kernel representation of the rule error and the s-convex
//! Hermite-Hadamard sandwich.

use crate::bounds::rule_error;
use crate::error::Result;
use crate::oracle::quad::{integrate, DEFAULT_TOL};
use crate::params::{Interval, RuleParams};
use crate::zoo::TestFunction;

/// `(b - a) int_0^1 K(t) f'(t b + (1-t) a) dt` with the piecewise linear
/// kernel `K(t) = t - alpha lambda` on `[0, 1-alpha]` and
/// `t - 1 + lambda (1-alpha)` on `[1-alpha, 1]`.
pub fn kernel_representation(f: &TestFunction, params: &RuleParams, iv: &Interval) -> Result<f64> {
    let (al, l) = (params.alpha(), params.lambda());
    let split = 1.0 - al;
    let scale = [0.0, 0.5, 1.0]
        .iter()
        .map(|&t| f.deriv(iv.lerp(t)).abs())
        .fold(1.0f64, f64::max);
    let tol = DEFAULT_TOL.min(1e-12 * scale).max(1e-14 * scale);
    let left = integrate(|t| (t - al * l) * f.deriv(iv.lerp(t)), 0.0, split, tol)?;
    let right = integrate(|t| (t - 1.0 + l * (1.0 - al)) * f.deriv(iv.lerp(t)), split, 1.0, tol)?;
    Ok(iv.width() * (left.value + right.value))
}

/// `|I_f - kernel representation|`; zero up to quadrature error for every
/// differentiable `f`.
pub fn lemma_identity_residual(f: &TestFunction, params: &RuleParams, iv: &Interval) -> Result<f64> {
    Ok((rule_error(f, params, iv)? - kernel_representation(f, params, iv)?).abs())
}

/// The three members of `2^(s-1) f((a+b)/2) <= mean <= (f(a) + f(b))/(s+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteHadamard {
    pub lhs: f64,
    pub mid: f64,
    pub rhs: f64,
}

impl HermiteHadamard {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.mid + tol && self.mid <= self.rhs + tol
    }
}

pub fn hermite_hadamard_check(f: &TestFunction, s: f64, iv: &Interval) -> Result<HermiteHadamard> {
    Ok(HermiteHadamard {
        lhs: 2f64.powf(s - 1.0) * f.eval(iv.midpoint()),
        mid: f.mean_integral(iv)?,
        rhs: (f.eval(iv.a()) + f.eval(iv.b())) / (s + 1.0),
    })
}

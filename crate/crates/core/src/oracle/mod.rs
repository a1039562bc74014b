//! Brute-force numerics used to check the closed forms: adaptive
//! quadrature, kernel moment integrals, convexity probing and the kernel
//! representation of the rule error.

mod identity;
mod moments;
mod probe;
mod quad;

pub use identity::{hermite_hadamard_check, kernel_representation, lemma_identity_residual, HermiteHadamard};
pub use moments::{moment_integral_numeric, moment_integral_numeric_right, MomentKind, MOMENT_TOL};
pub use probe::{sconcavity_probe, sconvexity_probe, Verdict, Witness, DEFAULT_PROBE_N, PROBE_SLACK};
pub use quad::{integrate, integrate_with_breaks, QuadConfig, QuadResult, DEFAULT_TOL, MAX_DEPTH};

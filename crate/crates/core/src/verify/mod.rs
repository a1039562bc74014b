//! Verification campaigns: soundness fuzzing, reduction and specialization
//! equalities, and comparisons against earlier bounds.

pub mod compare;
pub mod csv;
pub mod fuzz;
pub mod reduction;

pub use compare::{improvement_coefficients, tightness_compare, CoefficientCheck, CompareGrid, CompareRow};
pub use fuzz::{fuzz_verify, FuzzConfig, Pairing, TightnessStats, TrialRecord, VerificationReport, Violation};
pub use reduction::{reduction_check, EqualityCheck, ReductionReport, EQUALITY_TOL};

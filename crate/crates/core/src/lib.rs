//! Error bounds for the three-point quadrature rule
//!
//! ```text
//! lambda (alpha f(a) + (1-alpha) f(b)) + (1-lambda) f(alpha a + (1-alpha) b)
//! ```
//!
//! when `|f'|^q` is s-convex or s-concave, together with an independent
//! numeric oracle that checks the closed forms.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod means;
pub mod oracle;
pub mod params;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use params::{ConvexityClass, ConvexityMode, DerivativeData, Interval, RuleParams};

//! Barycentric interpolation at Chebyshev points of the second kind, hardened
//! against rounding.
//!
//! The crate provides
//!
//! * [`nodes`]: Chebyshev points rounded so that the sums the stable
//!   evaluator relies on are exact binary64 operations;
//! * [`eval_second`]: the second barycentric formula, both the textbook
//!   quotient and a reformulation as a quotient of sums of positive terms;
//! * [`eval_first`]: the first barycentric formula on top of an
//!   overflow-free product ([`fp_scaled`]);
//! * [`oracle`] and [`diagnostics`]: high precision references and the error
//!   observables used to measure all of the above.

pub mod diagnostics;
pub mod error;
pub mod eval_first;
pub mod eval_second;
pub mod fp_scaled;
pub mod hexfloat;
pub mod nodes;
pub mod oracle;
pub mod summation;
pub mod weights;

pub use error::{Error, Result};
pub use eval_first::eval_first;
pub use eval_second::{eval_naive, eval_stable, SampleVector};
pub use fp_scaled::ScaledValue;
pub use nodes::{BracketIndex, NodeKind, NodeSet};
pub use oracle::{ErrorStats, HiPrecValue, Oracle};
pub use summation::SummationMethod;
pub use weights::WeightScheme;

/// Unit roundoff of binary64, the `ε` every error bound in this crate is
/// expressed in.
pub const EPS: f64 = f64::EPSILON / 2.0;

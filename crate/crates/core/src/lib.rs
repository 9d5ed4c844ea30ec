//! Exact algorithms for extending partial set functions to coverage
//! functions.
//!
//! * [`coverage`]: the W-transform, its inverse and the coverage test.
//! * [`extension`]: exact extendibility with witnesses and Farkas certificates.
//! * [`approx`]: the replacement ratio and bounds on the best multiplicative
//!   approximation factor.
//! * [`norm`]: the additive L1 approximation with a rounded dual.
//! * [`gadgets`]: reduction instances and brute-force membership checks.
//! * [`lp`]: the exact simplex kernel underneath all of them.
//!
//! The LP kernel and set-function types are generic over [`Scalar`]; the
//! aliases below fix the arbitrary-precision instantiation used by the rest
//! of the crate.

pub mod approx;
pub mod coverage;
pub mod error;
pub mod extension;
pub mod gadgets;
pub mod io;
pub mod lp;
pub mod norm;
pub mod scalar;
pub mod set;

pub use error::{Error, Result};
pub use scalar::{Extended, Rational, Scalar, ScaledRoot};
pub use set::SetMask;

pub type PartialFunction = coverage::PartialFunction<Rational>;
pub type TotalSetFunction = coverage::TotalSetFunction<Rational>;
pub type WCoefficients = coverage::WCoefficients<Rational>;
pub type LinearProgram = lp::LinearProgram<Rational>;
pub type LpOutcome = lp::LpOutcome<Rational>;

//! Generalized metric structures (partial metric, metric-like, b-metric,
//! b-metric-like) and common fixed points of onto expansive map pairs.
//!
//! * [`spaces`]: spaces, axiom checkers, `D#`, convergence.
//! * [`analysis`]: polygon, geometric Cauchy and limit-sandwich diagnostics.
//! * [`solver`]: inverse-orbit solver and hypothesis audits.
//! * [`oracle`]: exhaustive checks on small finite spaces.
//! * [`cli`]: JSON scenarios, reports and CSV traces.

// `!(a >= b)` is used on purpose so that NaN counts as a failure
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod solver;
pub mod spaces;

pub use error::{Error, Result};

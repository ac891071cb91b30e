//! Common fixed points of onto expansive map pairs.
//!
//! [`solve`] walks the inverse orbit `x_(2n) = T x_(2n+1)`,
//! `x_(2n+1) = S x_(2n+2)` through user-supplied preimage selectors,
//! certifies it with the geometric Cauchy test, and reports residuals of
//! the final point together with an audit of the expansion hypothesis on the
//! pairs the orbit actually uses.

mod audit;
mod hypothesis;
mod maps;
mod orbit;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::Space;

pub use audit::{
    audit, audit_pairs, audit_phi, audit_phi_pairs, audit_rl, audit_rl_pairs, rl_sides, AuditReport, AuditViolation,
};
pub use hypothesis::{ExpansionHypothesis, Phi, PhiFamily, PhiFn};
pub use maps::{Map, MapPair, MapSpec, PointFn};
pub use orbit::{inverse_orbit, inverse_orbit_with, OrbitTrace, Termination};

/// Residual tolerance on `D#(z, Tz)` and `D#(z, Sz)`.
pub const TOL_FIX: f64 = 1e-10;

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub max_steps: usize,
    pub tol_fix: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_steps: DEFAULT_MAX_STEPS,
            tol_fix: TOL_FIX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub candidate: f64,
    pub t_residual: f64,
    pub s_residual: f64,
    pub certified: bool,
    pub trace: OrbitTrace,
    pub hypothesis_audit: AuditReport,
}

/// Runs the inverse orbit from `x0` and extracts its last point as the
/// candidate common fixed point `z`.
///
/// Residuals use `D#`, since a fixed point may have `D(z, Tz) = D(z, z) > 0`.
/// The report is certified when both residuals are within `tol_fix` and the
/// orbit is certified Cauchy. The hypothesis audit covers only the orbit
/// pairs and is reported alongside, not folded into `certified`.
pub fn solve(
    space: &Space,
    maps: &MapPair,
    hyp: &ExpansionHypothesis,
    x0: f64,
    config: SolveConfig,
) -> Result<SolveReport> {
    if !space.is_complete() {
        return Err(Error::IncompleteSpace);
    }
    hyp.validate(space)?;
    let trace = inverse_orbit_with(space, maps, x0, config.max_steps, config.tol_fix)?;
    let z = trace.last();
    let (t_residual, s_residual) = residuals(space, maps, z);
    let hypothesis_audit = audit_pairs(space, maps, hyp, &trace.hypothesis_pairs())?;
    let certified = t_residual <= config.tol_fix && s_residual <= config.tol_fix && trace.cauchy.is_certified();
    Ok(SolveReport {
        candidate: z,
        t_residual,
        s_residual,
        certified,
        trace,
        hypothesis_audit,
    })
}

/// `(D#(z, Tz), D#(z, Sz))`.
pub fn residuals(space: &Space, maps: &MapPair, z: f64) -> (f64, f64) {
    (space.d_sharp(z, maps.t.apply(z)), space.d_sharp(z, maps.s.apply(z)))
}

/// Replays the uniqueness argument on two claimed common fixed points.
///
/// Returns true when `z1` and `z2` coincide or are at distance 0. A false
/// return means two distinct common fixed points exist, which the expansion
/// hypothesis forbids; auditing the pair `(z1, z2)` must then fail.
pub fn verify_uniqueness_argument(
    space: &Space,
    maps: &MapPair,
    hyp: &ExpansionHypothesis,
    z1: f64,
    z2: f64,
    tol_fix: f64,
) -> Result<bool> {
    hyp.validate(space)?;
    for z in [z1, z2] {
        let (t_residual, s_residual) = residuals(space, maps, z);
        if !(t_residual <= tol_fix && s_residual <= tol_fix) {
            return Err(Error::NotAFixedPoint {
                point: z,
                t_residual,
                s_residual,
            });
        }
    }
    Ok(space.same_point(z1, z2) || space.dist(z1, z2) == 0.0)
}

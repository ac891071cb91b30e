use serde::Serialize;

use super::hypothesis::{ExpansionHypothesis, Phi};
use super::maps::MapPair;
use crate::error::{Error, Result};
use crate::spaces::{le_with_slack, pairs, Space, Strategy};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditViolation {
    /// Argument of T.
    pub x: f64,
    /// Argument of S.
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub checked_pairs: usize,
    pub violations: Vec<AuditViolation>,
    pub passed: bool,
}

impl AuditReport {
    fn from_violations(checked_pairs: usize, violations: Vec<AuditViolation>) -> Self {
        AuditReport {
            checked_pairs,
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.violations.iter().any(|v| v.x == x && v.y == y)
    }
}

/// Both sides of the (R, L) inequality at the ordered pair `(x, y)`.
pub fn rl_sides(space: &Space, maps: &MapPair, r: f64, l: f64, x: f64, y: f64) -> (f64, f64) {
    let (tx, sy) = (maps.t.apply(x), maps.s.apply(y));
    let lhs = space.dist(tx, sy);
    let coefficient = if l == 0.0 {
        r
    } else {
        let m = [
            space.d_sharp(x, tx),
            space.d_sharp(y, sy),
            space.d_sharp(x, sy),
            space.d_sharp(y, tx),
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
        r + l * m
    };
    (lhs, coefficient * space.dist(x, y))
}

/// Audits the (R, L) hypothesis over `pairs`. `x` is always the argument of
/// T and `y` of S; no symmetrization.
pub fn audit_rl_pairs(space: &Space, maps: &MapPair, r: f64, l: f64, pairs: &[(f64, f64)]) -> Result<AuditReport> {
    ExpansionHypothesis::rl(r, l).validate(space)?;
    let violations = pairs
        .iter()
        .filter_map(|&(x, y)| {
            let (lhs, rhs) = rl_sides(space, maps, r, l, x, y);
            (!le_with_slack(rhs, lhs) || lhs.is_nan() || rhs.is_nan()).then_some(AuditViolation { x, y, lhs, rhs })
        })
        .collect();
    Ok(AuditReport::from_violations(pairs.len(), violations))
}

pub fn audit_rl(space: &Space, maps: &MapPair, r: f64, l: f64, strategy: Strategy) -> Result<AuditReport> {
    audit_rl_pairs(space, maps, r, l, &pairs(space.carrier(), strategy)?)
}

/// Audits `D(Tx, Sy) >= phi(D(x, y)) D(x, y)` over `pairs`. Pairs with
/// `D(x, y) = 0` are outside phi's domain and count as compliant.
///
/// A value of phi below its codomain bound is an error. Equality is
/// tolerated: for tiny `t`, `K^2 + b t` rounds to `K^2`.
pub fn audit_phi_pairs(space: &Space, maps: &MapPair, phi: &Phi, pairs: &[(f64, f64)]) -> Result<AuditReport> {
    let mut violations = Vec::new();
    for &(x, y) in pairs {
        let t = space.dist(x, y);
        if t == 0.0 {
            continue;
        }
        let value = phi.eval(t);
        if !(value >= phi.k_squared) {
            return Err(Error::PhiBelowKSquared {
                t,
                value,
                bound: phi.k_squared,
            });
        }
        let lhs = space.dist(maps.t.apply(x), maps.s.apply(y));
        let rhs = value * t;
        if !le_with_slack(rhs, lhs) || lhs.is_nan() {
            violations.push(AuditViolation { x, y, lhs, rhs });
        }
    }
    Ok(AuditReport::from_violations(pairs.len(), violations))
}

pub fn audit_phi(space: &Space, maps: &MapPair, phi: &Phi, strategy: Strategy) -> Result<AuditReport> {
    audit_phi_pairs(space, maps, phi, &pairs(space.carrier(), strategy)?)
}

/// Dispatches on the hypothesis form.
pub fn audit_pairs(
    space: &Space,
    maps: &MapPair,
    hyp: &ExpansionHypothesis,
    pairs: &[(f64, f64)],
) -> Result<AuditReport> {
    match hyp {
        ExpansionHypothesis::Rl { r_const, l_const } => audit_rl_pairs(space, maps, *r_const, *l_const, pairs),
        ExpansionHypothesis::Phi(phi) => {
            hyp.validate(space)?;
            audit_phi_pairs(space, maps, phi, pairs)
        }
    }
}

pub fn audit(space: &Space, maps: &MapPair, hyp: &ExpansionHypothesis, strategy: Strategy) -> Result<AuditReport> {
    audit_pairs(space, maps, hyp, &pairs(space.carrier(), strategy)?)
}

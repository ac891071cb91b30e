use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::Space;

pub type PhiFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Named families of control functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiFamily {
    /// `t -> a + b t`.
    Affine { a: f64, b: f64 },
}

impl PhiFamily {
    pub fn build(self) -> PhiFn {
        match self {
            PhiFamily::Affine { a, b } => Arc::new(move |t| a + b * t),
        }
    }
}

/// `phi` together with the lower bound of its codomain.
#[derive(Clone)]
pub struct Phi {
    pub label: String,
    pub phi: PhiFn,
    /// Codomain bound: `phi(t) > k_squared` for all `t > 0`. Normally `K^2`.
    pub k_squared: f64,
    /// Whether `phi(t_n) -> k_squared+ => t_n -> 0` has been attested by the
    /// caller. It is not machine-checkable.
    pub limit_condition_attested: bool,
    /// Named family, when known; lets [`ExpansionHypothesis::validate`] check
    /// the codomain analytically.
    pub family: Option<PhiFamily>,
}

impl Phi {
    pub fn eval(&self, t: f64) -> f64 {
        (self.phi)(t)
    }
}

impl fmt::Debug for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Phi")
            .field("label", &self.label)
            .field("k_squared", &self.k_squared)
            .field("limit_condition_attested", &self.limit_condition_attested)
            .finish()
    }
}

/// Expansion condition on `(T, S)`.
#[derive(Debug, Clone)]
pub enum ExpansionHypothesis {
    /// `D(Tx, Sy) >= [R + L min{D#(x,Tx), D#(y,Sy), D#(x,Sy), D#(y,Tx)}] D(x, y)`
    Rl { r_const: f64, l_const: f64 },
    /// `D(Tx, Sy) >= phi(D(x, y)) D(x, y)`
    Phi(Phi),
}

impl ExpansionHypothesis {
    pub fn rl(r_const: f64, l_const: f64) -> Self {
        ExpansionHypothesis::Rl { r_const, l_const }
    }

    /// Phi hypothesis with codomain bound `K^2` of `space`.
    pub fn phi_family(space: &Space, family: PhiFamily, attested: bool) -> Self {
        let PhiFamily::Affine { a, b } = family;
        ExpansionHypothesis::Phi(Phi {
            label: format!("affine{{{a}, {b}}}"),
            phi: family.build(),
            k_squared: space.k_const() * space.k_const(),
            limit_condition_attested: attested,
            family: Some(family),
        })
    }

    pub fn validate(&self, space: &Space) -> Result<()> {
        match self {
            ExpansionHypothesis::Rl { r_const, l_const } => {
                if !(r_const.is_finite() && *r_const > space.k_const()) {
                    return Err(Error::InvalidHypothesis(format!(
                        "R must exceed K = {}, got {r_const}",
                        space.k_const()
                    )));
                }
                if !(l_const.is_finite() && *l_const >= 0.0) {
                    return Err(Error::InvalidHypothesis(format!("L must be >= 0, got {l_const}")));
                }
            }
            ExpansionHypothesis::Phi(p) => {
                if !(p.k_squared.is_finite() && p.k_squared >= 1.0) {
                    return Err(Error::InvalidHypothesis(format!(
                        "phi codomain bound must be >= 1, got {}",
                        p.k_squared
                    )));
                }
                if let Some(PhiFamily::Affine { a, b }) = p.family {
                    // a + b t > bound for every t > 0
                    if !(a >= p.k_squared && b >= 0.0 && (a > p.k_squared || b > 0.0)) {
                        return Err(Error::InvalidHypothesis(format!(
                            "{} does not stay above {} on t > 0",
                            p.label, p.k_squared
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

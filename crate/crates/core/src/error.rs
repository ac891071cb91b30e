//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("exhaustive enumeration requested on an infinite (interval) carrier")]
    ExhaustiveOnInfiniteCarrier,

    #[error("operation requires a finite carrier")]
    FiniteCarrierRequired,

    #[error("no finite K: D({x}, {y}) > 0 while D({x}, {z}) + D({z}, {y}) = 0")]
    NoFiniteK { x: f64, y: f64, z: f64 },

    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("point {0} is not in the carrier")]
    PointOutsideCarrier(f64),

    #[error("negative distance {value} at index {index}")]
    NegativeDistance { index: usize, value: f64 },

    #[error("need at least {needed} entries, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sequence prefix does not exhibit D(x_n, x) -> 0 (tail gap {gap})")]
    HypothesisNotMet { gap: f64 },

    #[error("preimage selector broken at step {step}: forward({preimage}) = {image}, expected {target}")]
    PreimageBroken {
        step: usize,
        target: f64,
        preimage: f64,
        image: f64,
    },

    #[error("invalid hypothesis: {0}")]
    InvalidHypothesis(String),

    #[error("phi({t}) = {value} is below the codomain bound {bound}")]
    PhiBelowKSquared { t: f64, value: f64, bound: f64 },

    #[error("{point} is not a common fixed point (T residual {t_residual}, S residual {s_residual})")]
    NotAFixedPoint {
        point: f64,
        t_residual: f64,
        s_residual: f64,
    },

    #[error("space is not declared complete")]
    IncompleteSpace,

    #[error("carrier has {size} points, limit is {max}")]
    CarrierTooLarge { size: usize, max: usize },

    #[error("invalid map: {0}")]
    InvalidMap(String),
}

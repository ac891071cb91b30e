//! Numeric diagnostics for the auxiliary lemmas of b-metric-like spaces:
//! the polygon inequality, the geometric Cauchy criterion, and the
//! sandwich bounds for limits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::{le_with_slack, tail_window, Space};

/// Distances below this carry no relative precision (subnormal range) and
/// count as zero in ratio estimates.
pub const RESOLUTION_FLOOR: f64 = f64::MIN_POSITIVE / f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolygonBound {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Polygon inequality along a chain `x_0, ..., x_n`:
///
/// `D(x_n, x_0) <= K D(x_0, x_1) + K^2 D(x_1, x_2) + ... + K^(n-1) D(x_(n-2), x_(n-1)) + K^(n-1) D(x_(n-1), x_n)`
///
/// The last two legs share the weight `K^(n-1)`. A two-point chain gets
/// weight `K`.
pub fn polygon_bound(space: &Space, chain: &[f64]) -> Result<PolygonBound> {
    if chain.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: chain.len(),
        });
    }
    let k = space.k_const();
    let n = chain.len() - 1;
    let lhs = space.dist(chain[n], chain[0]);
    let mut rhs = 0.0;
    let mut weight = 1.0;
    for i in 0..n {
        if i + 1 < n || n == 1 {
            weight *= k;
        }
        rhs += weight * space.dist(chain[i], chain[i + 1]);
    }
    Ok(PolygonBound {
        lhs,
        rhs,
        holds: le_with_slack(lhs, rhs),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CauchyStatus {
    CauchyCertified,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CauchyVerdict {
    pub lambda_hat: f64,
    pub threshold: f64,
    pub verdict: CauchyStatus,
    pub per_step_ratios: Vec<f64>,
    /// First index `i` with `d_i = 0` and `d_(i+1) > 0`.
    pub divergent_step: Option<usize>,
}

impl CauchyVerdict {
    pub fn is_certified(&self) -> bool {
        self.verdict == CauchyStatus::CauchyCertified
    }
}

/// Certifies `lim D(x_n, x_m) = 0` from successive distances.
///
/// `lambda_hat` is the largest ratio `d_(i+1) / d_i`; the orbit is certified
/// Cauchy when `lambda_hat < 1 / K`. Failing that bound is Inconclusive,
/// never a disproof. Entries below [`RESOLUTION_FLOOR`] are treated as 0.
pub fn geometric_cauchy_check(distances: &[f64], k_const: f64) -> Result<CauchyVerdict> {
    if distances.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: distances.len(),
        });
    }
    if !(k_const.is_finite() && k_const >= 1.0) {
        return Err(Error::InvalidArgument(format!("K must be >= 1, got {k_const}")));
    }
    if let Some((index, &value)) = distances.iter().enumerate().find(|(_, d)| !(**d >= 0.0)) {
        return Err(Error::NegativeDistance { index, value });
    }

    let resolved = |d: f64| if d < RESOLUTION_FLOOR { 0.0 } else { d };
    let mut divergent_step = None;
    let per_step_ratios: Vec<f64> = distances
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let (prev, next) = (resolved(w[0]), resolved(w[1]));
            if prev > 0.0 {
                next / prev
            } else if next == 0.0 {
                0.0
            } else {
                divergent_step.get_or_insert(i);
                f64::INFINITY
            }
        })
        .collect();
    let lambda_hat = per_step_ratios.iter().copied().fold(0.0, f64::max);
    let threshold = 1.0 / k_const;
    Ok(CauchyVerdict {
        lambda_hat,
        threshold,
        verdict: if lambda_hat < threshold {
            CauchyStatus::CauchyCertified
        } else {
            CauchyStatus::Inconclusive
        },
        per_step_ratios,
        divergent_step,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichBound {
    pub lower: f64,
    pub estimate: f64,
    pub upper: f64,
    pub holds: bool,
}

/// Checks `K^-1 D(x, y) <= lim D(x_n, y) <= K D(x, y)` for a prefix with
/// `D(x_n, x) -> 0`.
///
/// The prefix must show `D(x_n, x) < tol` over its whole tail window, else
/// [`Error::HypothesisNotMet`]. The limit is estimated by the tail mean of
/// `D(x_n, y)`.
pub fn limit_sandwich_check(space: &Space, seq: &[f64], x: f64, y: f64, tol: f64) -> Result<SandwichBound> {
    let tail = zero_limit_tail(space, seq, x, tol)?;
    let estimate = tail.iter().map(|&p| space.dist(p, y)).sum::<f64>() / tail.len() as f64;
    let k = space.k_const();
    let dxy = space.dist(x, y);
    let (lower, upper) = (dxy / k, k * dxy);
    Ok(SandwichBound {
        lower,
        estimate,
        upper,
        holds: lower - tol <= estimate && estimate <= upper + tol,
    })
}

fn zero_limit_tail<'a>(space: &Space, seq: &'a [f64], x: f64, tol: f64) -> Result<&'a [f64]> {
    if seq.is_empty() {
        return Err(Error::TooShort { needed: 1, got: 0 });
    }
    let tail = &seq[seq.len() - tail_window(seq.len())..];
    let gap = tail.iter().map(|&p| space.dist(p, x)).fold(0.0, f64::max);
    if gap < tol {
        Ok(tail)
    } else {
        Err(Error::HypothesisNotMet { gap })
    }
}

/// Every carrier point `x` with `D(x_n, x) -> 0` along the prefix. A finite
/// b-metric-like space admits at most one such point.
pub fn zero_distance_limits(space: &Space, seq: &[f64], tol: f64) -> Result<Vec<f64>> {
    let f = space.carrier().as_finite().ok_or(Error::FiniteCarrierRequired)?;
    Ok(f.points()
        .iter()
        .copied()
        .filter(|&x| zero_limit_tail(space, seq, x, tol).is_ok())
        .collect())
}

use serde::Serialize;

use super::maps::MapPair;
use super::TOL_FIX;
use crate::analysis::{geometric_cauchy_check, CauchyVerdict};
use crate::error::{Error, Result};
use crate::spaces::{tail_window, Space, TOL_POINT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// `x_(n+1) = x_n` exactly and the other map also fixes the point.
    FixedPointHit,
    /// Tail distances below `tol_fix` and `x_(n+2) = x_n` exactly: the
    /// two-step map has entered a floating-point cycle.
    ToleranceMet,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitTrace {
    pub points: Vec<f64>,
    pub successive_distances: Vec<f64>,
    pub cauchy: CauchyVerdict,
    pub terminated_by: Termination,
}

impl OrbitTrace {
    /// Ordered `(x, y)` pairs the expansion hypothesis is applied to when
    /// bounding consecutive distances: `(x_j, x_(j+1))` and `(x_j, x_(j-1))`
    /// for odd `j`, skipping `(x_1, x_0)`. `x` is a T-argument, `y` an
    /// S-argument.
    pub fn hypothesis_pairs(&self) -> Vec<(f64, f64)> {
        let p = &self.points;
        let mut out = Vec::with_capacity(p.len());
        for j in (1..p.len()).step_by(2) {
            if j >= 3 {
                out.push((p[j], p[j - 1]));
            }
            if j + 1 < p.len() {
                out.push((p[j], p[j + 1]));
            }
        }
        out
    }

    pub fn last(&self) -> f64 {
        *self.points.last().expect("orbit has at least x0")
    }
}

/// Inverse orbit with the default `tol_fix`.
pub fn inverse_orbit(space: &Space, maps: &MapPair, x0: f64, max_steps: usize) -> Result<OrbitTrace> {
    inverse_orbit_with(space, maps, x0, max_steps, TOL_FIX)
}

/// Builds `x_1 = T^-1(x_0)`, `x_2 = S^-1(x_1)`, `x_3 = T^-1(x_2)`, ... so that
/// `x_(2n) = T x_(2n+1)` and `x_(2n+1) = S x_(2n+2)`.
///
/// Every step is round-trip checked against the forward map. `max_steps`
/// counts preimage selections.
pub fn inverse_orbit_with(
    space: &Space,
    maps: &MapPair,
    x0: f64,
    max_steps: usize,
    tol_fix: f64,
) -> Result<OrbitTrace> {
    if max_steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "max_steps must be >= 2, got {max_steps}"
        )));
    }
    if !space.carrier().contains(x0) {
        return Err(Error::PointOutsideCarrier(x0));
    }
    let mut points = vec![x0];
    let mut distances = Vec::new();
    let mut terminated_by = Termination::MaxIterations;

    for step in 1..=max_steps {
        let cur = points[step - 1];
        let (map, other) = if step % 2 == 1 {
            (&maps.t, &maps.s)
        } else {
            (&maps.s, &maps.t)
        };
        let next = map.preimage(cur);
        let image = map.apply(next);
        if !space.carrier().contains(next) || !space.same_point(image, cur) {
            return Err(Error::PreimageBroken {
                step,
                target: cur,
                preimage: next,
                image,
            });
        }
        points.push(next);
        distances.push(space.dist(cur, next));

        if next == cur && fixes(other.apply(cur), cur) {
            terminated_by = Termination::FixedPointHit;
            break;
        }
        let w = tail_window(distances.len());
        if distances.len() >= 8
            && distances[distances.len() - w..].iter().all(|&d| d <= tol_fix)
            && next == points[step - 2]
        {
            terminated_by = Termination::ToleranceMet;
            break;
        }
    }

    // A collapsed orbit repeats its last point forever.
    let cauchy = if terminated_by == Termination::FixedPointHit {
        let mut continued = distances.clone();
        continued.push(*distances.last().expect("at least one step"));
        geometric_cauchy_check(&continued, space.k_const())?
    } else {
        geometric_cauchy_check(&distances, space.k_const())?
    };

    Ok(OrbitTrace {
        points,
        successive_distances: distances,
        cauchy,
        terminated_by,
    })
}

// Relative closeness without the subnormal floor of `same_point`, which would
// let any map look like it fixes points near underflow.
fn fixes(image: f64, x: f64) -> bool {
    (image - x).abs() <= TOL_POINT * image.abs().max(x.abs())
}

//! Built-in space families.
//!
//! All interval families live on `[0, inf)` unless a carrier is supplied.
//! Every constructor marks the space complete.

use super::{Carrier, FiniteCarrier, IntervalCarrier, Space, SpaceKind};

/// `D(x, y) = (sqrt(x) + sqrt(y))^2` on `[0, inf)`, b-metric-like with K = 2.
pub fn sqrt_square() -> Space {
    sqrt_square_on(Carrier::Interval(IntervalCarrier::half_line()))
}

pub fn sqrt_square_on(carrier: Carrier) -> Space {
    build("sqrt_square", carrier, 2.0, SpaceKind::BMetricLike, |x, y| {
        let s = x.sqrt() + y.sqrt();
        s * s
    })
}

/// Two points `{0, 1}` with `sigma(0, 0) = 2` and `sigma = 1` elsewhere.
/// Metric-like (K = 1).
pub fn two_point_sigma() -> Space {
    let carrier =
        FiniteCarrier::with_labels(vec![0.0, 1.0], vec!["0".into(), "1".into()]).expect("two distinct points");
    build(
        "two_point_sigma",
        Carrier::Finite(carrier),
        1.0,
        SpaceKind::MetricLike,
        |x, y| {
            if x == 0.0 && y == 0.0 {
                2.0
            } else {
                1.0
            }
        },
    )
}

/// `|x - y|` on `[0, inf)`.
pub fn abs_metric() -> Space {
    abs_metric_on(Carrier::Interval(IntervalCarrier::half_line()))
}

pub fn abs_metric_on(carrier: Carrier) -> Space {
    build("abs_metric", carrier, 1.0, SpaceKind::BMetric, |x, y| (x - y).abs())
}

/// `(x - y)^2`, a b-metric with K = 2.
pub fn squared_abs() -> Space {
    squared_abs_on(Carrier::Interval(IntervalCarrier::half_line()))
}

pub fn squared_abs_on(carrier: Carrier) -> Space {
    build("squared_abs", carrier, 2.0, SpaceKind::BMetric, |x, y| {
        (x - y) * (x - y)
    })
}

/// `P(x, y) = max(x, y)` on `[0, inf)`, a partial metric.
pub fn max_partial() -> Space {
    max_partial_on(Carrier::Interval(IntervalCarrier::half_line()))
}

pub fn max_partial_on(carrier: Carrier) -> Space {
    build("max_partial", carrier, 1.0, SpaceKind::PartialMetric, f64::max)
}

/// `sigma(x, y) = x + y` on `[0, inf)`, metric-like but neither a partial
/// metric nor a b-metric.
pub fn sum_metric_like() -> Space {
    sum_metric_like_on(Carrier::Interval(IntervalCarrier::half_line()))
}

pub fn sum_metric_like_on(carrier: Carrier) -> Space {
    build("sum", carrier, 1.0, SpaceKind::MetricLike, |x, y| x + y)
}

fn build<F>(name: &str, carrier: Carrier, k: f64, kind: SpaceKind, dist: F) -> Space
where
    F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    Space::new(name, carrier, k, kind, dist)
        .expect("built-in K is valid")
        .assume_complete(true)
}

//! Generalized metric structures.
//!
//! A [`Space`] pairs a carrier set with a distance function `D`, a relaxation
//! constant `K >= 1` and a declarative [`SpaceKind`]. The kind only selects
//! which axiom family [`check_axioms`] runs; nothing is assumed about a space
//! until it has been checked.
//!
//! Points are plain `f64` coordinates. Finite carriers give every point a
//! distinct coordinate and an optional label, so maps and tables can index
//! into them without a separate point type.

mod axioms;
pub mod builtin;
mod convergence;
mod sampling;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use axioms::{check_axioms, min_valid_k, AxiomReport, AxiomViolation};
pub use convergence::{converges_to, tail_window, Convergence, ConvergenceCheck};
pub use sampling::{pairs, triples, PointSampler, Strategy};

/// Relative slack applied to every axiom and hypothesis inequality.
pub const TOL_AXIOM: f64 = 1e-9;

/// Relative tolerance for ambient point equality on interval carriers.
pub const TOL_POINT: f64 = 1e-12;

/// Default sampling span above the lower bound of an unbounded interval.
pub const DEFAULT_SPAN: f64 = 100.0;

pub type DistFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// `lhs <= rhs` up to half of [`TOL_AXIOM`] relative to the larger side.
/// Excesses inside the subnormal range are rounding noise and pass.
pub fn le_with_slack(lhs: f64, rhs: f64) -> bool {
    lhs - rhs <= (0.5 * TOL_AXIOM * lhs.abs().max(rhs.abs())).max(f64::MIN_POSITIVE)
}

pub(crate) fn approx_eq(a: f64, b: f64) -> bool {
    le_with_slack(a, b) && le_with_slack(b, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    PartialMetric,
    MetricLike,
    BMetric,
    BMetricLike,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceKind::PartialMetric => "partial metric",
            SpaceKind::MetricLike => "metric-like",
            SpaceKind::BMetric => "b-metric",
            SpaceKind::BMetricLike => "b-metric-like",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteCarrier {
    points: Vec<f64>,
    labels: Vec<String>,
}

impl FiniteCarrier {
    /// Points labelled `p0, p1, ...`.
    pub fn new(points: Vec<f64>) -> Result<Self> {
        let labels = (0..points.len()).map(|i| format!("p{i}")).collect();
        Self::with_labels(points, labels)
    }

    pub fn with_labels(points: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCarrier("finite carrier is empty".into()));
        }
        if labels.len() != points.len() {
            return Err(Error::InvalidCarrier(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidCarrier(format!("point {i} is not finite")));
            }
            if points[..i].contains(p) {
                return Err(Error::InvalidCarrier(format!("duplicate point {p}")));
            }
            if labels[..i].contains(&labels[i]) {
                return Err(Error::InvalidCarrier(format!("duplicate label {}", labels[i])));
            }
        }
        Ok(FiniteCarrier { points, labels })
    }

    /// Carrier `{0, 1, ..., n-1}`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i as f64).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, x: f64) -> Option<usize> {
        self.points.iter().position(|&p| p == x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalCarrier {
    lower: f64,
    upper: f64,
    span: f64,
}

impl IntervalCarrier {
    /// `[lower, upper]`; pass `f64::INFINITY` for `[lower, inf)`.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        Self::with_span(lower, upper, DEFAULT_SPAN)
    }

    /// Like [`IntervalCarrier::new`], sampling unbounded intervals over
    /// `[lower, lower + span]`.
    pub fn with_span(lower: f64, upper: f64, span: f64) -> Result<Self> {
        if !lower.is_finite() {
            return Err(Error::InvalidCarrier("lower bound must be finite".into()));
        }
        if upper.is_nan() || !(lower < upper) {
            return Err(Error::InvalidCarrier(format!(
                "bounds must satisfy a < b, got [{lower}, {upper}]"
            )));
        }
        if !(span.is_finite() && span > 0.0) {
            return Err(Error::InvalidCarrier(format!("span must be positive, got {span}")));
        }
        Ok(IntervalCarrier { lower, upper, span })
    }

    pub fn half_line() -> Self {
        IntervalCarrier {
            lower: 0.0,
            upper: f64::INFINITY,
            span: DEFAULT_SPAN,
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    /// Upper end of the region sampled by [`PointSampler`].
    pub fn sample_upper(&self) -> f64 {
        if self.upper.is_finite() {
            self.upper
        } else {
            self.lower + self.span
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Carrier {
    Finite(FiniteCarrier),
    Interval(IntervalCarrier),
}

impl Carrier {
    pub fn contains(&self, x: f64) -> bool {
        match self {
            Carrier::Finite(f) => f.index_of(x).is_some(),
            Carrier::Interval(i) => !x.is_nan() && x >= i.lower && x <= i.upper && x.is_finite(),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteCarrier> {
        match self {
            Carrier::Finite(f) => Some(f),
            Carrier::Interval(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Finite(_))
    }

    /// Ambient point equality: identifier equality on finite carriers,
    /// relative closeness within [`TOL_POINT`] on intervals. The relative
    /// scale never drops below `f64::MIN_POSITIVE`, so subnormal rounding
    /// noise does not separate points.
    pub fn same_point(&self, x: f64, y: f64) -> bool {
        match self {
            Carrier::Finite(_) => x == y,
            Carrier::Interval(_) => (x - y).abs() <= TOL_POINT * x.abs().max(y.abs()).max(f64::MIN_POSITIVE),
        }
    }
}

/// A set equipped with a generalized distance.
#[derive(Clone)]
pub struct Space {
    name: String,
    carrier: Carrier,
    dist: DistFn,
    k_const: f64,
    kind: SpaceKind,
    complete: bool,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Space")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .field("k_const", &self.k_const)
            .field("kind", &self.kind)
            .field("complete", &self.complete)
            .finish()
    }
}

impl Space {
    /// Builds a space. Completeness is not assumed; see [`Space::assume_complete`].
    pub fn new<F>(name: impl Into<String>, carrier: Carrier, k_const: f64, kind: SpaceKind, dist: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        check_k(k_const)?;
        Ok(Space {
            name: name.into(),
            carrier,
            dist: Arc::new(dist),
            k_const,
            kind,
            complete: false,
        })
    }

    /// Finite space from an `n x n` distance table. Points are the indices
    /// `0..n`.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        matrix: Vec<Vec<f64>>,
        k_const: f64,
        kind: SpaceKind,
    ) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpace("distance table must be square".into()));
        }
        if matrix.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpace("distance table has non-finite entries".into()));
        }
        let carrier = FiniteCarrier::with_labels((0..n).map(|i| i as f64).collect(), labels)?;
        let lookup = move |x: f64, y: f64| match (table_index(x, n), table_index(y, n)) {
            (Some(i), Some(j)) => matrix[i][j],
            _ => f64::NAN,
        };
        Ok(Space::new(name, Carrier::Finite(carrier), k_const, kind, lookup)?.assume_complete(true))
    }

    /// Records the completeness assumption. It cannot be verified numerically.
    pub fn assume_complete(mut self, complete: bool) -> Self {
        self.complete = complete;
        self
    }

    pub fn with_k(&self, k_const: f64) -> Result<Self> {
        check_k(k_const)?;
        let mut s = self.clone();
        s.k_const = k_const;
        Ok(s)
    }

    pub fn with_kind(&self, kind: SpaceKind) -> Self {
        let mut s = self.clone();
        s.kind = kind;
        s
    }

    /// The same distance on a finite subset of the carrier.
    pub fn restrict(&self, points: &[f64]) -> Result<Self> {
        if let Some(&p) = points.iter().find(|&&p| !self.carrier.contains(p)) {
            return Err(Error::PointOutsideCarrier(p));
        }
        let mut s = self.clone();
        s.carrier = Carrier::Finite(FiniteCarrier::new(points.to_vec())?);
        s.name = format!("{}|finite", self.name);
        Ok(s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn k_const(&self) -> f64 {
        self.k_const
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn dist(&self, x: f64, y: f64) -> f64 {
        (self.dist)(x, y)
    }

    /// `|2 D(x, y) - D(x, x) - D(y, y)|`.
    pub fn d_sharp(&self, x: f64, y: f64) -> f64 {
        (2.0 * self.dist(x, y) - (self.dist(x, x) + self.dist(y, y))).abs()
    }

    pub fn same_point(&self, x: f64, y: f64) -> bool {
        self.carrier.same_point(x, y)
    }
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpace(format!("K must be a finite real >= 1, got {k}")))
    }
}

fn table_index(x: f64, n: usize) -> Option<usize> {
    if x >= 0.0 && x.fract() == 0.0 && (x as usize) < n {
        Some(x as usize)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_sharp_examples() {
        let s = builtin::sqrt_square();
        assert_eq!(s.d_sharp(1.0, 4.0), 2.0);
        assert_eq!(s.d_sharp(0.0, 0.0), 0.0);
        assert_eq!(s.d_sharp(7.3, 7.3), 0.0);
        assert_eq!(s.d_sharp(1.0, 9.0), 8.0);
    }

    #[test]
    fn d_sharp_vanishes_on_diagonal_of_table() {
        let s = builtin::two_point_sigma();
        assert_eq!(s.d_sharp(0.0, 0.0), 0.0);
        assert_eq!(s.d_sharp(1.0, 1.0), 0.0);
        // |2*1 - 2 - 1|
        assert_eq!(s.d_sharp(0.0, 1.0), 1.0);
    }

    #[test]
    fn carrier_validation() {
        assert!(FiniteCarrier::new(vec![0.0, 1.0, 0.0]).is_err());
        assert!(FiniteCarrier::new(vec![]).is_err());
        assert!(IntervalCarrier::new(1.0, 1.0).is_err());
        assert!(IntervalCarrier::new(2.0, 1.0).is_err());
        assert!(IntervalCarrier::new(0.0, f64::INFINITY).is_ok());
        assert!(IntervalCarrier::new(f64::NEG_INFINITY, 0.0).is_err());
    }

    #[test]
    fn k_must_be_at_least_one() {
        let c = Carrier::Interval(IntervalCarrier::half_line());
        assert!(Space::new("x", c.clone(), 0.5, SpaceKind::BMetric, |x, y| (x - y).abs()).is_err());
        assert!(Space::new("x", c, f64::NAN, SpaceKind::BMetric, |x, y| (x - y).abs()).is_err());
    }

    #[test]
    fn ambient_equality() {
        let c = Carrier::Interval(IntervalCarrier::half_line());
        assert!(c.same_point(1.0, 1.0 + 1e-13));
        assert!(!c.same_point(1.0, 1.0 + 1e-10));
        assert!(c.same_point(0.0, 0.0));
        assert!(!c.same_point(0.0, 1e-300));
        assert!(c.same_point(0.0, 5e-324));
        let f = Carrier::Finite(FiniteCarrier::indexed(3).unwrap());
        assert!(!f.same_point(0.0, 1.0));
        assert!(f.same_point(2.0, 2.0));
    }

    #[test]
    fn table_lookup_outside_carrier_is_nan() {
        let s = Space::from_table(
            "t",
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            1.0,
            SpaceKind::BMetric,
        )
        .unwrap();
        assert!(s.dist(0.0, 3.0).is_nan());
        assert!(s.dist(0.5, 0.0).is_nan());
    }

    #[test]
    fn restrict_rejects_foreign_points() {
        let s = builtin::sqrt_square();
        assert_eq!(s.restrict(&[-1.0]).unwrap_err(), Error::PointOutsideCarrier(-1.0));
        let r = s.restrict(&[0.0, 1.0, 4.0]).unwrap();
        assert_eq!(r.dist(1.0, 4.0), 9.0);
        assert!(r.carrier().is_finite());
    }

    #[test]
    fn slack_is_relative() {
        assert!(le_with_slack(1.0 + 1e-12, 1.0));
        assert!(!le_with_slack(1.0 + 1e-8, 1.0));
        assert!(le_with_slack(0.0, 0.0));
        assert!(!le_with_slack(1e-300, 0.0));
        assert!(le_with_slack(5.366e-320, 5.365e-320));
    }
}

use serde::Serialize;

use super::{approx_eq, le_with_slack, pairs, triples, Space, SpaceKind, Strategy};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomViolation {
    /// Axiom identifier: `nonneg`, `D1`..`D3`, `P1`..`P4`, `sigma1`..`sigma3`.
    pub axiom: String,
    pub points: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub kind: SpaceKind,
    pub k_const: f64,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub passed: bool,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn count(&self, axiom: &str) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

struct Collector(Vec<AxiomViolation>);

impl Collector {
    fn push(&mut self, axiom: &str, points: &[f64], lhs: f64, rhs: f64) {
        self.0.push(AxiomViolation {
            axiom: axiom.to_string(),
            points: points.to_vec(),
            lhs,
            rhs,
        });
    }

    /// Records a violation unless `lhs <= rhs` up to slack. NaN always fails.
    fn le(&mut self, axiom: &str, points: &[f64], lhs: f64, rhs: f64) {
        if !le_with_slack(lhs, rhs) || lhs.is_nan() || rhs.is_nan() {
            self.push(axiom, points, lhs, rhs);
        }
    }
}

/// Checks the axiom family selected by `space.kind()`.
///
/// Partial metrics are checked against P1-P4, metric-like spaces against
/// sigma1-sigma3 (triangle inequality with K = 1), b-metric and b-metric-like
/// spaces against D1-D3 with the space's K. For b-metrics D1 is the
/// equivalence, so nonzero self-distances are violations too. Every kind
/// also requires nonnegative distances.
pub fn check_axioms(space: &Space, strategy: Strategy) -> Result<AxiomReport> {
    let carrier = space.carrier();
    let (pair_list, triple_list) = match strategy {
        Strategy::Exhaustive => (pairs(carrier, strategy)?, triples(carrier, strategy)?),
        Strategy::Sampled { .. } => {
            let t = triples(carrier, strategy)?;
            let mut p = Vec::with_capacity(2 * t.len());
            for &[x, y, _] in &t {
                p.push((x, y));
                p.push((x, x));
            }
            (p, t)
        }
    };

    let d = |x: f64, y: f64| space.dist(x, y);
    let mut out = Collector(Vec::new());
    let kind = space.kind();
    let (sym_id, sep_id) = match kind {
        SpaceKind::PartialMetric => ("P3", "P1"),
        SpaceKind::MetricLike => ("sigma2", "sigma1"),
        SpaceKind::BMetric | SpaceKind::BMetricLike => ("D2", "D1"),
    };

    for &(x, y) in &pair_list {
        let dxy = d(x, y);
        if !(dxy >= 0.0) {
            out.push("nonneg", &[x, y], dxy, 0.0);
        }
        let dyx = d(y, x);
        if !approx_eq(dxy, dyx) {
            out.push(sym_id, &[x, y], dxy, dyx);
        }
        let same = space.same_point(x, y);
        match kind {
            SpaceKind::PartialMetric => {
                let (dxx, dyy) = (d(x, x), d(y, y));
                if !same && approx_eq(dxx, dxy) && approx_eq(dyy, dxy) {
                    out.push("P1", &[x, y], dxy, dxx);
                }
                out.le("P2", &[x, y], dxx, dxy);
            }
            _ => {
                if dxy == 0.0 && !same {
                    out.push(sep_id, &[x, y], dxy, 0.0);
                }
                if kind == SpaceKind::BMetric && x == y && dxy != 0.0 {
                    out.push("D1", &[x, y], dxy, 0.0);
                }
            }
        }
    }

    let k = space.k_const();
    for &[x, y, z] in &triple_list {
        match kind {
            SpaceKind::PartialMetric => {
                // intermediate point is y
                out.le("P4", &[x, y, z], d(x, z), d(x, y) + d(y, z) - d(y, y));
            }
            SpaceKind::MetricLike => {
                out.le("sigma3", &[x, y, z], d(x, y), d(x, z) + d(z, y));
            }
            SpaceKind::BMetric | SpaceKind::BMetricLike => {
                out.le("D3", &[x, y, z], d(x, y), k * (d(x, z) + d(z, y)));
            }
        }
    }

    let violations = out.0;
    Ok(AxiomReport {
        kind,
        k_const: k,
        pairs_checked: pair_list.len(),
        triples_checked: triple_list.len(),
        passed: violations.is_empty(),
        violations,
    })
}

/// Smallest `K >= 1` for which D3 holds on a finite carrier.
pub fn min_valid_k(space: &Space) -> Result<f64> {
    let f = space.carrier().as_finite().ok_or(Error::FiniteCarrierRequired)?;
    let p = f.points();
    let mut best = 1.0_f64;
    for &x in p {
        for &y in p {
            let num = space.dist(x, y);
            for &z in p {
                let den = space.dist(x, z) + space.dist(z, y);
                if den > 0.0 {
                    best = best.max(num / den);
                } else if num > 0.0 {
                    return Err(Error::NoFiniteK { x, y, z });
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{builtin, Carrier, FiniteCarrier};

    fn reevaluates(space: &Space, r: &AxiomReport) {
        let d = |x, y| space.dist(x, y);
        for v in &r.violations {
            let p = &v.points;
            let (lhs, rhs) = match v.axiom.as_str() {
                "D3" => (d(p[0], p[1]), space.k_const() * (d(p[0], p[2]) + d(p[2], p[1]))),
                "sigma3" => (d(p[0], p[1]), d(p[0], p[2]) + d(p[2], p[1])),
                "P4" => (d(p[0], p[2]), d(p[0], p[1]) + d(p[1], p[2]) - d(p[1], p[1])),
                "P2" => (d(p[0], p[0]), d(p[0], p[1])),
                "D2" | "sigma2" | "P3" => (d(p[0], p[1]), d(p[1], p[0])),
                "P1" => (d(p[0], p[1]), d(p[0], p[0])),
                _ => (d(p[0], p[1]), 0.0),
            };
            assert_eq!((lhs, rhs), (v.lhs, v.rhs), "{v:?}");
        }
    }

    #[test]
    fn sqrt_square_with_k_one_has_d3_witness() {
        let s = builtin::sqrt_square().with_k(1.0).unwrap();
        let r = check_axioms(&s, Strategy::Sampled { n: 2000, seed: 1 }).unwrap();
        assert!(!r.passed);
        let w = r
            .violations
            .iter()
            .find(|v| v.axiom == "D3" && v.points == vec![1.0, 1.0, 0.0])
            .expect("witness (1, 1, 0)");
        assert_eq!((w.lhs, w.rhs), (4.0, 2.0));
        reevaluates(&s, &r);
    }

    #[test]
    fn two_point_sigma_is_metric_like() {
        let s = builtin::two_point_sigma();
        let r = check_axioms(&s, Strategy::Exhaustive).unwrap();
        assert!(r.passed, "{:?}", r.violations);
        assert_eq!(r.triples_checked, 8);
        // not a partial metric: sigma(0,0) = 2 > sigma(0,1) = 1 breaks P2
        let p = check_axioms(&s.with_kind(SpaceKind::PartialMetric), Strategy::Exhaustive).unwrap();
        assert!(p.count("P2") > 0);
        reevaluates(&s, &p);
    }

    #[test]
    fn b_metric_requires_zero_self_distance() {
        let s = builtin::sqrt_square().with_kind(SpaceKind::BMetric);
        let r = check_axioms(&s, Strategy::Sampled { n: 100, seed: 3 }).unwrap();
        assert!(r.count("D1") > 0);
        assert_eq!(r.count("D3"), 0);
    }

    #[test]
    fn separation_failure_is_reported() {
        let s = Space::from_table(
            "zeros",
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            1.0,
            SpaceKind::BMetricLike,
        )
        .unwrap();
        let r = check_axioms(&s, Strategy::Exhaustive).unwrap();
        assert_eq!(r.count("D1"), 2);
    }

    #[test]
    fn asymmetric_and_negative_tables() {
        let s = Space::from_table(
            "bad",
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![2.0, -1.0]],
            1.0,
            SpaceKind::BMetricLike,
        )
        .unwrap();
        let r = check_axioms(&s, Strategy::Exhaustive).unwrap();
        assert!(r.count("D2") > 0);
        assert!(r.count("nonneg") > 0);
        reevaluates(&s, &r);
    }

    #[test]
    fn max_is_a_partial_metric() {
        let s = builtin::max_partial();
        let r = check_axioms(&s, Strategy::Sampled { n: 5000, seed: 4 }).unwrap();
        assert!(r.passed, "{:?}", &r.violations[..r.violations.len().min(3)]);
    }

    #[test]
    fn exhaustive_on_interval_is_an_error() {
        let s = builtin::sqrt_square();
        assert_eq!(
            check_axioms(&s, Strategy::Exhaustive).unwrap_err(),
            Error::ExhaustiveOnInfiniteCarrier
        );
    }

    #[test]
    fn min_valid_k_cases() {
        let two = builtin::two_point_sigma();
        assert_eq!(min_valid_k(&two).unwrap(), 1.0);
        let abs = builtin::abs_metric().restrict(&[0.0, 0.5, 2.0, 7.0]).unwrap();
        assert_eq!(min_valid_k(&abs).unwrap(), 1.0);
        assert_eq!(
            min_valid_k(&builtin::sqrt_square()).unwrap_err(),
            Error::FiniteCarrierRequired
        );
    }

    #[test]
    fn min_valid_k_detects_unbounded_ratio() {
        // a and b both sit at distance 0 from c, yet D(a, b) = 1
        let s = Space::from_table(
            "t",
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]],
            1.0,
            SpaceKind::BMetricLike,
        )
        .unwrap();
        assert!(matches!(min_valid_k(&s), Err(Error::NoFiniteK { .. })));
    }

    #[test]
    fn sampled_check_is_deterministic() {
        let s = builtin::sqrt_square().with_k(1.3).unwrap();
        let a = check_axioms(&s, Strategy::Sampled { n: 3000, seed: 11 }).unwrap();
        let b = check_axioms(&s, Strategy::Sampled { n: 3000, seed: 11 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn carrier_finite_helper() {
        let c = Carrier::Finite(FiniteCarrier::indexed(2).unwrap());
        assert!(c.is_finite());
    }
}

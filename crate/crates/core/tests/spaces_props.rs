#![allow(clippy::needless_range_loop)]

use bmlike::spaces::{
    builtin, check_axioms, min_valid_k, Carrier, FiniteCarrier, Space, SpaceKind, Strategy as Coverage,
};
use proptest::prelude::*;

fn table(kind: SpaceKind, k: f64, m: Vec<Vec<f64>>) -> Space {
    let labels = (0..m.len()).map(|i| format!("p{i}")).collect();
    Space::from_table("t", labels, m, k, kind).unwrap()
}

/// Symmetric integer tables of size 2..=4; off-diagonal entries in 1..=3,
/// diagonal entries in 0..=3.
fn int_table() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (2usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(0u32..=3, n * (n + 1) / 2).prop_map(move |v| {
            let mut m = vec![vec![0; n]; n];
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i..n {
                    let e = it.next().unwrap();
                    let e = if i == j { e } else { e.max(1) };
                    m[i][j] = e;
                    m[j][i] = e;
                }
            }
            m
        })
    })
}

fn to_f64(m: &[Vec<u32>]) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect()
}

/// Largest `D(x, y) / (D(x, z) + D(z, y))` as an exact fraction, floored at 1.
fn exact_min_k(m: &[Vec<u32>]) -> (u64, u64) {
    let n = m.len();
    let mut best = (1u64, 1u64);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let num = m[x][y] as u64;
                let den = (m[x][z] + m[z][y]) as u64;
                if den > 0 && num * best.1 > best.0 * den {
                    best = (num, den);
                }
            }
        }
    }
    best
}

fn point() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), 0.0..1e3f64, 0.0..1e-6f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn d_sharp_is_symmetric_and_vanishes_on_the_diagonal(x in point(), y in point()) {
        for s in [builtin::sqrt_square(), builtin::max_partial(), builtin::sum_metric_like(), builtin::squared_abs()] {
            prop_assert_eq!(s.d_sharp(x, y), s.d_sharp(y, x));
            prop_assert_eq!(s.d_sharp(x, x), 0.0);
        }
    }

    #[test]
    fn b_metric_d_sharp_is_twice_the_distance(m in int_table()) {
        let mut m = m;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 0;
        }
        let s = table(SpaceKind::BMetric, 1.0, to_f64(&m));
        let k = min_valid_k(&s).unwrap();
        let s = s.with_k(k).unwrap();
        prop_assert!(check_axioms(&s, Coverage::Exhaustive).unwrap().passed);
        let f = s.carrier().as_finite().unwrap();
        for &x in f.points() {
            for &y in f.points() {
                prop_assert_eq!(s.d_sharp(x, y), 2.0 * s.dist(x, y));
            }
        }
    }

    #[test]
    fn min_valid_k_is_tight(m in int_table()) {
        let s = table(SpaceKind::BMetricLike, 1.0, to_f64(&m));
        let k = min_valid_k(&s).unwrap();
        let (num, den) = exact_min_k(&m);
        prop_assert_eq!(k, num as f64 / den as f64);

        let at_k = check_axioms(&s.with_k(k).unwrap(), Coverage::Exhaustive).unwrap();
        prop_assert_eq!(at_k.count("D3"), 0);
        if k > 1.0 {
            let below = check_axioms(&s.with_k(k * (1.0 - 1e-9)).unwrap(), Coverage::Exhaustive).unwrap();
            prop_assert!(below.count("D3") > 0);
        }
    }

    #[test]
    fn axiom_checks_are_deterministic(seed in any::<u64>(), n in 1usize..400) {
        let s = builtin::sqrt_square().with_k(1.0).unwrap();
        let a = check_axioms(&s, Coverage::Sampled { n, seed }).unwrap();
        let b = check_axioms(&s, Coverage::Sampled { n, seed }).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn violations_reevaluate(seed in any::<u64>()) {
        let s = builtin::sqrt_square().with_k(1.0).unwrap();
        let r = check_axioms(&s, Coverage::Sampled { n: 300, seed }).unwrap();
        prop_assert_eq!(r.passed, r.violations.is_empty());
        for v in &r.violations {
            prop_assert_eq!(v.axiom.as_str(), "D3");
            let p = &v.points;
            prop_assert_eq!(v.lhs, s.dist(p[0], p[1]));
            prop_assert_eq!(v.rhs, s.dist(p[0], p[2]) + s.dist(p[2], p[1]));
        }
    }

    #[test]
    fn sampled_distances_are_nonnegative(seed in any::<u64>()) {
        for s in [builtin::sqrt_square(), builtin::abs_metric(), builtin::squared_abs(), builtin::max_partial(), builtin::sum_metric_like()] {
            let r = check_axioms(&s, Coverage::Sampled { n: 200, seed }).unwrap();
            prop_assert_eq!(r.count("nonneg"), 0);
            prop_assert!(r.passed, "{} {:?}", s.name(), r.violations.first());
        }
    }
}

/// Every 3x3 table over {0, 1, 2, 3} that is a partial metric is metric-like.
#[test]
fn partial_metrics_are_metric_like() {
    let grid = [0.0, 1.0, 2.0, 3.0];
    let mut partial = 0;
    for m in bmlike::oracle::symmetric_tables(3, &grid) {
        let p = table(SpaceKind::PartialMetric, 1.0, m.clone());
        if !check_axioms(&p, Coverage::Exhaustive).unwrap().passed {
            continue;
        }
        partial += 1;
        let ml = p.with_kind(SpaceKind::MetricLike);
        let r = check_axioms(&ml, Coverage::Exhaustive).unwrap();
        assert!(r.passed, "{m:?}: {:?}", r.violations);
    }
    assert!(partial > 0);
}

#[test]
fn restricted_sqrt_square_needs_k_two() {
    let s = builtin::sqrt_square_on(Carrier::Finite(FiniteCarrier::new(vec![0.0, 1.0, 4.0]).unwrap()));
    assert_eq!(min_valid_k(&s).unwrap(), 2.0);
}

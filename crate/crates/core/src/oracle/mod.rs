//! Exhaustive verification on small finite spaces.
//!
//! On a finite carrier the onto self-maps are exactly the permutations, so
//! every `(T, S)` pair can be enumerated. For each pair passing the
//! exhaustive hypothesis audit the common fixed points are counted directly;
//! the fixed point theorems predict exactly one.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{audit, solve, ExpansionHypothesis, Map, MapPair, SolveConfig};
use crate::spaces::{check_axioms, FiniteCarrier, Space, SpaceKind, Strategy};

pub const DEFAULT_N_MAX: usize = 4;

/// A finite space small enough to enumerate all `(n!)^2` map pairs.
#[derive(Debug, Clone)]
pub struct FiniteInstance {
    space: Space,
}

impl FiniteInstance {
    pub fn new(space: Space) -> Result<Self> {
        Self::with_limit(space, DEFAULT_N_MAX)
    }

    pub fn with_limit(space: Space, n_max: usize) -> Result<Self> {
        let size = space.carrier().as_finite().ok_or(Error::FiniteCarrierRequired)?.len();
        if size > n_max {
            return Err(Error::CarrierTooLarge { size, max: n_max });
        }
        Ok(FiniteInstance { space })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    fn carrier(&self) -> &FiniteCarrier {
        self.space.carrier().as_finite().expect("checked in constructor")
    }

    /// All permutations of `0..n`, in lexicographic order.
    pub fn bijections(&self) -> Vec<Vec<usize>> {
        let n = self.carrier().len();
        (0..n).permutations(n).collect()
    }

    pub fn map_pair(&self, t: &[usize], s: &[usize]) -> Result<MapPair> {
        let c = self.space.carrier();
        Ok(MapPair::new(Map::permutation(c, t)?, Map::permutation(c, s)?))
    }
}

/// `{x : Tx = x and Sx = x}` by enumeration.
pub fn common_fixed_points(carrier: &FiniteCarrier, maps: &MapPair) -> Vec<f64> {
    carrier
        .points()
        .iter()
        .copied()
        .filter(|&x| maps.t.apply(x) == x && maps.s.apply(x) == x)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub t: Vec<usize>,
    pub s: Vec<usize>,
    pub common_fixed_points: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremAudit {
    pub instances_checked: usize,
    pub hypothesis_holders: usize,
    pub counterexamples: Vec<Counterexample>,
}

fn has_zero_distance_pair(space: &Space) -> bool {
    let p = space.carrier().as_finite().expect("finite").points();
    p.iter().tuple_combinations().any(|(&x, &y)| space.dist(x, y) == 0.0)
}

/// Visits every ordered pair `(T, S)` whose exhaustive audit passes.
fn for_each_holder<F>(instance: &FiniteInstance, hyp: &ExpansionHypothesis, mut f: F) -> Result<usize>
where
    F: FnMut(&[usize], &[usize], &MapPair) -> Result<()>,
{
    let perms = instance.bijections();
    let mut checked = 0;
    for t in &perms {
        for s in &perms {
            checked += 1;
            let maps = instance.map_pair(t, s)?;
            if audit(instance.space(), &maps, hyp, Strategy::Exhaustive)?.passed {
                f(t, s, &maps)?;
            }
        }
    }
    Ok(checked)
}

/// Audits every ordered bijection pair against `hyp` over all `n^2` point
/// pairs; each holder must have exactly one common fixed point unless two
/// distinct points sit at distance 0.
pub fn audit_theorem_finite(instance: &FiniteInstance, hyp: &ExpansionHypothesis) -> Result<TheoremAudit> {
    let glued = has_zero_distance_pair(instance.space());
    let mut holders = 0;
    let mut counterexamples = Vec::new();
    let checked = for_each_holder(instance, hyp, |t, s, maps| {
        holders += 1;
        let cfp = common_fixed_points(instance.carrier(), maps);
        if cfp.len() != 1 && !glued {
            counterexamples.push(Counterexample {
                t: t.to_vec(),
                s: s.to_vec(),
                common_fixed_points: cfp,
            });
        }
        Ok(())
    })?;
    Ok(TheoremAudit {
        instances_checked: checked,
        hypothesis_holders: holders,
        counterexamples,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub passing_pairs: usize,
    pub solves: usize,
    pub disagreements: usize,
    pub agreed: bool,
}

/// Solves every hypothesis-holding pair from every start point and checks
/// the candidate against [`common_fixed_points`].
pub fn cross_validate(instance: &FiniteInstance, hyp: &ExpansionHypothesis) -> Result<CrossValidation> {
    let starts = instance.carrier().points().to_vec();
    let mut passing = 0;
    let mut solves = 0;
    let mut disagreements = 0;
    for_each_holder(instance, hyp, |_, _, maps| {
        passing += 1;
        let cfp = common_fixed_points(instance.carrier(), maps);
        for &x0 in &starts {
            solves += 1;
            let r = solve(instance.space(), maps, hyp, x0, SolveConfig::default())?;
            if !cfp.contains(&r.candidate) {
                disagreements += 1;
            }
        }
        Ok(())
    })?;
    Ok(CrossValidation {
        passing_pairs: passing,
        solves,
        disagreements,
        agreed: disagreements == 0,
    })
}

/// Parameters of the falsification sweep over small distance tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub max_size: usize,
    pub grid: Vec<f64>,
    pub k_values: Vec<f64>,
    /// R values `K + offset`.
    pub r_offsets: Vec<f64>,
    /// R values `K * scale`.
    pub r_scales: Vec<f64>,
    pub l_values: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_size: 3,
            grid: vec![0.0, 1.0, 2.0, 3.0],
            k_values: vec![1.0, 2.0],
            r_offsets: vec![0.5],
            r_scales: vec![2.0],
            l_values: vec![0.0, 1.0],
        }
    }
}

impl SweepConfig {
    pub fn r_values(&self, k: f64) -> Vec<f64> {
        let mut r: Vec<f64> = self
            .r_offsets
            .iter()
            .map(|o| k + o)
            .chain(self.r_scales.iter().map(|s| k * s))
            .collect();
        r.sort_by(f64::total_cmp);
        r.dedup();
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCounterexample {
    pub matrix: Vec<Vec<f64>>,
    pub k: f64,
    pub r: f64,
    pub l: f64,
    pub counterexample: Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub matrices_enumerated: usize,
    pub spaces_accepted: usize,
    pub instances_checked: usize,
    pub hypothesis_holders: usize,
    pub solver_disagreements: usize,
    pub counterexamples: Vec<SweepCounterexample>,
}

/// All symmetric `n x n` tables with entries from `grid`, in a fixed order.
pub fn symmetric_tables(n: usize, grid: &[f64]) -> Vec<Vec<Vec<f64>>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    slots
        .iter()
        .map(|_| grid.iter().copied())
        .multi_cartesian_product()
        .map(|values| {
            let mut m = vec![vec![0.0; n]; n];
            for (&(i, j), v) in slots.iter().zip(values) {
                m[i][j] = v;
                m[j][i] = v;
            }
            m
        })
        .collect()
}

/// Searches small b-metric-like tables for a hypothesis-holding map pair
/// without exactly one common fixed point. Tables are kept when the
/// exhaustive axiom check passes for the given K.
pub fn falsification_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut jobs = Vec::new();
    for n in 1..=config.max_size {
        if n > DEFAULT_N_MAX {
            return Err(Error::CarrierTooLarge {
                size: n,
                max: DEFAULT_N_MAX,
            });
        }
        for m in symmetric_tables(n, &config.grid) {
            for &k in &config.k_values {
                jobs.push((m.clone(), k));
            }
        }
    }
    let matrices_enumerated = (1..=config.max_size)
        .map(|n| config.grid.len().pow((n * (n + 1) / 2) as u32))
        .sum();

    struct Partial {
        accepted: bool,
        checked: usize,
        holders: usize,
        disagreements: usize,
        counterexamples: Vec<SweepCounterexample>,
    }

    let partials: Vec<Partial> = jobs
        .par_iter()
        .map(|(m, k)| -> Result<Partial> {
            let n = m.len();
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            let space = Space::from_table("sweep", labels, m.clone(), *k, SpaceKind::BMetricLike)?;
            let mut p = Partial {
                accepted: false,
                checked: 0,
                holders: 0,
                disagreements: 0,
                counterexamples: Vec::new(),
            };
            if !check_axioms(&space, Strategy::Exhaustive)?.passed {
                return Ok(p);
            }
            p.accepted = true;
            let instance = FiniteInstance::new(space)?;
            for r in config.r_values(*k) {
                for &l in &config.l_values {
                    let hyp = ExpansionHypothesis::rl(r, l);
                    let a = audit_theorem_finite(&instance, &hyp)?;
                    p.checked += a.instances_checked;
                    p.holders += a.hypothesis_holders;
                    p.counterexamples
                        .extend(a.counterexamples.into_iter().map(|c| SweepCounterexample {
                            matrix: m.clone(),
                            k: *k,
                            r,
                            l,
                            counterexample: c,
                        }));
                    if a.hypothesis_holders > 0 {
                        p.disagreements += cross_validate(&instance, &hyp)?.disagreements;
                    }
                }
            }
            Ok(p)
        })
        .collect::<Result<_>>()?;

    let mut report = SweepReport {
        config: config.clone(),
        matrices_enumerated,
        spaces_accepted: 0,
        instances_checked: 0,
        hypothesis_holders: 0,
        solver_disagreements: 0,
        counterexamples: Vec::new(),
    };
    for p in partials {
        report.spaces_accepted += p.accepted as usize;
        report.instances_checked += p.checked;
        report.hypothesis_holders += p.holders;
        report.solver_disagreements += p.disagreements;
        report.counterexamples.extend(p.counterexamples);
    }
    Ok(report)
}

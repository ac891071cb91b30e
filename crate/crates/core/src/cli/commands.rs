use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::report::Outcome;
use super::scenario::{Command, LemmaSpec, Resolved, Scenario};
use crate::analysis::{geometric_cauchy_check, limit_sandwich_check, polygon_bound, CauchyVerdict, SandwichBound};
use crate::error::Result;
use crate::oracle::{
    audit_theorem_finite, cross_validate, falsification_sweep, CrossValidation, FiniteInstance, SweepReport,
    TheoremAudit,
};
use crate::solver::{audit_pairs, inverse_orbit_with, solve, AuditReport, AuditViolation, OrbitTrace};
use crate::spaces::{
    check_axioms, converges_to, min_valid_k, pairs, AxiomReport, AxiomViolation, Carrier, ConvergenceCheck,
    PointSampler, Space, SpaceKind, Strategy,
};

/// Reports list at most this many violations; counts are always complete.
pub const MAX_LISTED: usize = 50;

/// Triples sampled for the axiom pre-check of solve and lemma runs.
const PRECHECK_TRIPLES: usize = 2_000;

#[derive(Debug, Clone, Serialize)]
pub struct SpaceSummary {
    pub name: String,
    pub kind: SpaceKind,
    pub k_const: f64,
    pub complete: bool,
    pub carrier: String,
}

impl SpaceSummary {
    pub fn of(space: &Space) -> Self {
        let carrier = match space.carrier() {
            Carrier::Finite(f) => format!("{{{}}}", f.labels().join(", ")),
            Carrier::Interval(iv) if iv.upper().is_finite() => format!("[{}, {}]", iv.lower(), iv.upper()),
            Carrier::Interval(iv) => format!("[{}, inf)", iv.lower()),
        };
        SpaceSummary {
            name: space.name().to_string(),
            kind: space.kind(),
            k_const: space.k_const(),
            complete: space.is_complete(),
            carrier,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomSummary {
    pub strategy: Strategy,
    pub passed: bool,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violation_count: usize,
    pub violations: Vec<AxiomViolation>,
    /// Smallest K passing D3, on finite carriers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_valid_k: Option<f64>,
}

impl AxiomSummary {
    fn new(report: AxiomReport, strategy: Strategy, min_valid_k: Option<f64>) -> Self {
        let violation_count = report.violations.len();
        let mut violations = report.violations;
        violations.truncate(MAX_LISTED);
        AxiomSummary {
            strategy,
            passed: report.passed,
            pairs_checked: report.pairs_checked,
            triples_checked: report.triples_checked,
            violation_count,
            violations,
            min_valid_k,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSummary {
    pub checked_pairs: usize,
    pub passed: bool,
    pub violation_count: usize,
    pub violations: Vec<AuditViolation>,
}

impl From<AuditReport> for AuditSummary {
    fn from(r: AuditReport) -> Self {
        let violation_count = r.violations.len();
        let mut violations = r.violations;
        violations.truncate(MAX_LISTED);
        AuditSummary {
            checked_pairs: r.checked_pairs,
            passed: r.passed,
            violation_count,
            violations,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub space: SpaceSummary,
    pub maps: [String; 2],
    pub axiom_precheck: AxiomSummary,
    pub candidate: f64,
    pub t_residual: f64,
    pub s_residual: f64,
    pub certified: bool,
    pub trace: OrbitTrace,
    pub hypothesis_audit: AuditSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictedAudit {
    /// Pairs kept satisfy `y <= ratio * x`.
    pub ratio: f64,
    pub audit: AuditSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditResult {
    pub space: SpaceSummary,
    pub maps: [String; 2],
    pub strategy: Strategy,
    pub full: AuditSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted: Option<RestrictedAudit>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomsResult {
    pub space: SpaceSummary,
    pub axioms: AxiomSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolygonFailure {
    pub chain: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolygonSummary {
    pub chains: usize,
    pub holding: usize,
    /// Largest `lhs / rhs` over chains with `rhs > 0`.
    pub tightest_ratio: f64,
    pub failures: Vec<PolygonFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichSample {
    pub y: f64,
    pub bound: SandwichBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichSummary {
    pub limit: f64,
    pub sequence_len: usize,
    pub convergence: ConvergenceCheck,
    pub samples: usize,
    pub holding: usize,
    pub failures: Vec<SandwichSample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmasResult {
    pub space: SpaceSummary,
    pub axiom_precheck: AxiomSummary,
    pub polygon: PolygonSummary,
    /// Cauchy check on successive distances of the sequence. Informational:
    /// Inconclusive is not a failure.
    pub cauchy: CauchyVerdict,
    pub sandwich: SandwichSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceOracle {
    pub space: SpaceSummary,
    pub axioms: AxiomSummary,
    pub theorem: TheoremAudit,
    pub cross_validation: CrossValidation,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleResult {
    Sweep(SweepReport),
    Instance(InstanceOracle),
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandResult {
    Solve(SolveResult),
    Audit(AuditResult),
    Axioms(AxiomsResult),
    Oracle(OracleResult),
    Lemmas(LemmasResult),
}

pub struct Execution {
    pub outcome: Outcome,
    pub result: CommandResult,
    pub conventions: Vec<String>,
    pub trace: Option<OrbitTrace>,
}

fn map_labels(r: &Resolved) -> Result<[String; 2]> {
    let m = r.require_maps()?;
    Ok([m.t.label().to_string(), m.s.label().to_string()])
}

fn precheck(r: &Resolved) -> Result<AxiomSummary> {
    let strategy = r.strategy(match r.space.carrier() {
        Carrier::Finite(_) => None,
        Carrier::Interval(_) => Some(PRECHECK_TRIPLES),
    });
    Ok(AxiomSummary::new(check_axioms(&r.space, strategy)?, strategy, None))
}

pub fn execute(scenario: &Scenario, command: Command, r: &Resolved) -> Result<Execution> {
    let mut conventions = vec![
        "axiom and hypothesis inequalities hold up to 0.5 * tol.axiom relative to the larger side".to_string(),
        "interval points are equal when |a - b| <= tol.point * max(|a|, |b|, f64::MIN_POSITIVE)".to_string(),
    ];
    if let Some(c) = scenario.hypothesis.as_ref().and_then(|h| h.phi_convention()) {
        conventions.push(format!("phi codomain: {c}"));
        if !scenario.assumptions.phi_limit_condition_attested {
            conventions.push("phi limit condition not attested".into());
        }
    }
    let (outcome, result, trace) = match command {
        Command::Solve => run_solve(r, &mut conventions)?,
        Command::Audit => run_audit(scenario, r, &mut conventions)?,
        Command::Axioms => run_axioms(scenario, r)?,
        Command::Oracle => run_oracle(scenario, r)?,
        Command::Lemmas => run_lemmas(scenario, r, &mut conventions)?,
    };
    Ok(Execution {
        outcome,
        result,
        conventions,
        trace,
    })
}

type Ran = (Outcome, CommandResult, Option<OrbitTrace>);

fn run_solve(r: &Resolved, conventions: &mut Vec<String>) -> Result<Ran> {
    conventions.extend([
        "residuals are D#(z, Tz) and D#(z, Sz) with D#(x, y) = |2D(x, y) - D(x, x) - D(y, y)|".to_string(),
        "certified: both residuals <= tol.fix and the orbit is Cauchy certified; the hypothesis audit is reported separately".to_string(),
        "orbit hypothesis pairs: (x_j, x_(j+1)) and (x_j, x_(j-1)) for odd j, T acting on x_j".to_string(),
    ]);
    let maps = r.require_maps()?;
    let hyp = r.require_hypothesis()?;
    let axiom_precheck = precheck(r)?;
    let x0 = r.solve_x0()?;
    let report = solve(&r.space, maps, hyp, x0, r.solve_config)?;
    let outcome = Outcome::from_pass(report.certified && axiom_precheck.passed);
    let result = SolveResult {
        space: SpaceSummary::of(&r.space),
        maps: map_labels(r)?,
        axiom_precheck,
        candidate: report.candidate,
        t_residual: report.t_residual,
        s_residual: report.s_residual,
        certified: report.certified,
        trace: report.trace.clone(),
        hypothesis_audit: report.hypothesis_audit.into(),
    };
    Ok((outcome, CommandResult::Solve(result), Some(report.trace)))
}

fn run_audit(scenario: &Scenario, r: &Resolved, conventions: &mut Vec<String>) -> Result<Ran> {
    conventions.push("audit pairs are ordered: x is the argument of T, y of S".into());
    let maps = r.require_maps()?;
    let hyp = r.require_hypothesis()?;
    let strategy = r.strategy(scenario.run.samples);
    let all = pairs(r.space.carrier(), strategy)?;
    let full = audit_pairs(&r.space, maps, hyp, &all)?;
    let restricted = match scenario.run.restrict_y_over_x {
        Some(ratio) => {
            let kept: Vec<(f64, f64)> = all.iter().copied().filter(|&(x, y)| y <= ratio * x).collect();
            Some(RestrictedAudit {
                ratio,
                audit: audit_pairs(&r.space, maps, hyp, &kept)?.into(),
            })
        }
        None => None,
    };
    let outcome = Outcome::from_pass(full.passed);
    let result = AuditResult {
        space: SpaceSummary::of(&r.space),
        maps: map_labels(r)?,
        strategy,
        full: full.into(),
        restricted,
    };
    Ok((outcome, CommandResult::Audit(result), None))
}

fn run_axioms(scenario: &Scenario, r: &Resolved) -> Result<Ran> {
    let strategy = r.strategy(scenario.run.samples);
    let report = check_axioms(&r.space, strategy)?;
    let k = if r.space.carrier().is_finite() {
        Some(min_valid_k(&r.space)?)
    } else {
        None
    };
    let axioms = AxiomSummary::new(report, strategy, k);
    let outcome = Outcome::from_pass(axioms.passed);
    let result = AxiomsResult {
        space: SpaceSummary::of(&r.space),
        axioms,
    };
    Ok((outcome, CommandResult::Axioms(result), None))
}

fn run_oracle(scenario: &Scenario, r: &Resolved) -> Result<Ran> {
    if let Some(config) = &scenario.run.sweep {
        let report = falsification_sweep(config)?;
        let outcome = Outcome::from_pass(report.counterexamples.is_empty() && report.solver_disagreements == 0);
        return Ok((outcome, CommandResult::Oracle(OracleResult::Sweep(report)), None));
    }
    let hyp = r.require_hypothesis()?;
    let axioms = AxiomSummary::new(
        check_axioms(&r.space, Strategy::Exhaustive)?,
        Strategy::Exhaustive,
        None,
    );
    let instance = FiniteInstance::new(r.space.clone())?;
    let theorem = audit_theorem_finite(&instance, hyp)?;
    let cross_validation = cross_validate(&instance, hyp)?;
    let outcome = Outcome::from_pass(axioms.passed && theorem.counterexamples.is_empty() && cross_validation.agreed);
    let result = InstanceOracle {
        space: SpaceSummary::of(&r.space),
        axioms,
        theorem,
        cross_validation,
    };
    Ok((outcome, CommandResult::Oracle(OracleResult::Instance(result)), None))
}

fn run_lemmas(scenario: &Scenario, r: &Resolved, conventions: &mut Vec<String>) -> Result<Ran> {
    conventions.push("sandwich limit is estimated by the tail mean of D(x_n, y)".into());
    let spec = scenario.run.lemmas.clone().unwrap_or_default();
    let axiom_precheck = precheck(r)?;
    let polygon = polygon_suite(&r.space, &spec, r.seed)?;

    let (seq, limit) = match &spec.sequence {
        Some(s) => (s.points(), s.limit()),
        None => {
            let maps = r.require_maps()?;
            let trace = inverse_orbit_with(
                &r.space,
                maps,
                r.solve_x0()?,
                r.solve_config.max_steps,
                r.solve_config.tol_fix,
            )?;
            let z = trace.last();
            (trace.points, z)
        }
    };
    let distances: Vec<f64> = seq.windows(2).map(|w| r.space.dist(w[0], w[1])).collect();
    let cauchy = geometric_cauchy_check(&distances, r.space.k_const())?;

    let mut sampler = PointSampler::new(r.space.carrier(), r.seed.wrapping_add(1));
    let mut failures = Vec::new();
    let mut holding = 0;
    for _ in 0..spec.y_samples {
        let y = sampler.draw(0);
        let bound = limit_sandwich_check(&r.space, &seq, limit, y, spec.tol)?;
        if bound.holds {
            holding += 1;
        } else if failures.len() < MAX_LISTED {
            failures.push(SandwichSample { y, bound });
        }
    }
    let sandwich = SandwichSummary {
        limit,
        sequence_len: seq.len(),
        convergence: converges_to(&r.space, &seq, limit, spec.tol),
        samples: spec.y_samples,
        holding,
        failures,
    };
    let passed = axiom_precheck.passed && polygon.holding == polygon.chains && sandwich.holding == sandwich.samples;
    let result = LemmasResult {
        space: SpaceSummary::of(&r.space),
        axiom_precheck,
        polygon,
        cauchy,
        sandwich,
    };
    Ok((Outcome::from_pass(passed), CommandResult::Lemmas(result), None))
}

/// Seeded random chains of 2 to `max_chain_len` points.
pub fn random_chains(carrier: &Carrier, count: usize, max_chain_len: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = PointSampler::new(carrier, seed);
    let max_len = max_chain_len.max(2);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(2..=max_len);
            (0..len).map(|i| sampler.draw(i)).collect()
        })
        .collect()
}

fn polygon_suite(space: &Space, spec: &LemmaSpec, seed: u64) -> Result<PolygonSummary> {
    let mut holding = 0;
    let mut tightest_ratio: f64 = 0.0;
    let mut failures = Vec::new();
    for chain in random_chains(space.carrier(), spec.chains, spec.max_chain_len, seed) {
        let b = polygon_bound(space, &chain)?;
        if b.rhs > 0.0 {
            tightest_ratio = tightest_ratio.max(b.lhs / b.rhs);
        }
        if b.holds {
            holding += 1;
        } else if failures.len() < MAX_LISTED {
            failures.push(PolygonFailure {
                chain,
                lhs: b.lhs,
                rhs: b.rhs,
            });
        }
    }
    Ok(PolygonSummary {
        chains: spec.chains,
        holding,
        tightest_ratio,
        failures,
    })
}

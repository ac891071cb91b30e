use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::SweepConfig;
use crate::solver::{ExpansionHypothesis, MapPair, MapSpec, Phi, PhiFamily, SolveConfig, DEFAULT_MAX_STEPS, TOL_FIX};
use crate::spaces::{builtin, Carrier, FiniteCarrier, IntervalCarrier, Space, SpaceKind, Strategy, DEFAULT_SPAN};

/// Default seed when neither the scenario nor the command line gives one.
pub const DEFAULT_SEED: u64 = 0;

/// Default number of sampled pairs or triples on infinite carriers.
pub const DEFAULT_SAMPLES: usize = 10_000;

/// A complete, self-describing run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub space: SpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<MapsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisSpec>,
    pub run: RunSpec,
    #[serde(default)]
    pub assumptions: Assumptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SqrtSquare,
    TwoPointSigma,
    AbsMetric,
    SquaredAbs,
    MaxPartial,
    Sum,
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub family: Family,
    /// The constant K, required for every family.
    pub k: f64,
    /// Overrides the family's axiom family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<SpaceKind>,
    /// Replaces the family's default carrier. Not allowed for tables or
    /// `two_point_sigma`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<CarrierSpec>,
    /// Table family only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Table family only: symmetric nonnegative `n x n` matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CarrierSpec {
    /// `[lower, upper]`, or `[lower, inf)` when `upper` is absent.
    Interval {
        lower: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        upper: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        span: Option<f64>,
    },
    Finite {
        points: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsSpec {
    pub t: MapSpec,
    pub s: MapSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HypothesisSpec {
    Rl {
        r: f64,
        l: f64,
    },
    Phi {
        family: PhiFamily,
        /// Codomain bound of phi. Defaults to `K^2`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Solve,
    Audit,
    Axioms,
    Oracle,
    Lemmas,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Solve => "solve",
            Command::Audit => "audit",
            Command::Axioms => "axioms",
            Command::Oracle => "oracle",
            Command::Lemmas => "lemmas",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_fix: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Sampled pairs (audit) or triples (axioms). Finite carriers are checked
    /// exhaustively when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Audit only: also audit the sampled pairs with `y <= ratio * x`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict_y_over_x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<LemmaSpec>,
    /// Oracle only: run the table sweep instead of the scenario's own space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaSpec {
    /// Random chains for the polygon inequality.
    pub chains: usize,
    /// Chains have 2 to `max_chain_len` points.
    pub max_chain_len: usize,
    /// Points `y` for the limit sandwich.
    pub y_samples: usize,
    pub tol: f64,
    /// Sequence for the sandwich and Cauchy checks. Defaults to the inverse
    /// orbit from `x0`, with its last point as the limit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceSpec>,
}

impl Default for LemmaSpec {
    fn default() -> Self {
        LemmaSpec {
            chains: 1000,
            max_chain_len: 10,
            y_samples: 100,
            tol: 1e-6,
            sequence: None,
        }
    }
}

/// Explicit sequences converging to `limit`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SequenceSpec {
    /// `scale * ratio^n` for `n = 0..len`, limit 0.
    Geometric { scale: f64, ratio: f64, len: usize },
    /// `1 / n` for `n = 1..=len`, limit 0.
    Harmonic { len: usize },
}

impl SequenceSpec {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            SequenceSpec::Geometric { scale, ratio, len } => (0..len).map(|n| scale * ratio.powi(n as i32)).collect(),
            SequenceSpec::Harmonic { len } => (1..=len).map(|n| 1.0 / n as f64).collect(),
        }
    }

    pub fn limit(&self) -> f64 {
        0.0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assumptions {
    /// Overrides the family's completeness flag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default)]
    pub phi_limit_condition_attested: bool,
}

/// Schema failures carry the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid scenario: {0}")]
    Invalid(#[from] Error),
}

pub fn parse_scenario(text: &str) -> std::result::Result<Scenario, ScenarioError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| ScenarioError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn load_scenario(path: &Path) -> std::result::Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario(&text)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpace(msg.into())
}

impl SpaceSpec {
    pub fn build(&self) -> Result<Space> {
        let table_only = self.labels.is_some() || self.matrix.is_some();
        if table_only && self.family != Family::Table {
            return Err(invalid("`labels` and `matrix` belong to the table family"));
        }
        let carrier = self.carrier.as_ref().map(CarrierSpec::build).transpose()?;
        let base = match self.family {
            Family::SqrtSquare => carrier.map_or_else(builtin::sqrt_square, builtin::sqrt_square_on),
            Family::AbsMetric => carrier.map_or_else(builtin::abs_metric, builtin::abs_metric_on),
            Family::SquaredAbs => carrier.map_or_else(builtin::squared_abs, builtin::squared_abs_on),
            Family::MaxPartial => carrier.map_or_else(builtin::max_partial, builtin::max_partial_on),
            Family::Sum => carrier.map_or_else(builtin::sum_metric_like, builtin::sum_metric_like_on),
            Family::TwoPointSigma => {
                if carrier.is_some() {
                    return Err(invalid("two_point_sigma has a fixed carrier"));
                }
                builtin::two_point_sigma()
            }
            Family::Table => {
                if carrier.is_some() {
                    return Err(invalid("table spaces take their carrier from `labels`"));
                }
                let matrix = self
                    .matrix
                    .clone()
                    .ok_or_else(|| invalid("table family needs `matrix`"))?;
                let labels = self
                    .labels
                    .clone()
                    .unwrap_or_else(|| (0..matrix.len()).map(|i| format!("p{i}")).collect());
                Space::from_table(
                    "table",
                    labels,
                    matrix,
                    self.k,
                    self.kind.unwrap_or(SpaceKind::BMetricLike),
                )?
            }
        };
        let space = base.with_k(self.k)?;
        Ok(match self.kind {
            Some(kind) => space.with_kind(kind),
            None => space,
        })
    }
}

impl CarrierSpec {
    pub fn build(&self) -> Result<Carrier> {
        Ok(match self {
            CarrierSpec::Interval { lower, upper, span } => Carrier::Interval(IntervalCarrier::with_span(
                *lower,
                upper.unwrap_or(f64::INFINITY),
                span.unwrap_or(DEFAULT_SPAN),
            )?),
            CarrierSpec::Finite { points } => Carrier::Finite(FiniteCarrier::with_labels(
                points.clone(),
                points.iter().map(|p| p.to_string()).collect(),
            )?),
        })
    }
}

impl HypothesisSpec {
    pub fn build(&self, space: &Space, attested: bool) -> Result<ExpansionHypothesis> {
        let hyp = match *self {
            HypothesisSpec::Rl { r, l } => ExpansionHypothesis::rl(r, l),
            HypothesisSpec::Phi { family, bound } => match ExpansionHypothesis::phi_family(space, family, attested) {
                ExpansionHypothesis::Phi(p) => ExpansionHypothesis::Phi(Phi {
                    k_squared: bound.unwrap_or(p.k_squared),
                    ..p
                }),
                other => other,
            },
        };
        hyp.validate(space)?;
        Ok(hyp)
    }

    /// Which codomain convention a phi hypothesis uses.
    pub fn phi_convention(&self) -> Option<&'static str> {
        match self {
            HypothesisSpec::Rl { .. } => None,
            HypothesisSpec::Phi { bound: None, .. } => Some("phi(t) > K^2"),
            HypothesisSpec::Phi { bound: Some(_), .. } => Some("phi(t) > explicit bound"),
        }
    }
}

/// Everything a command needs, built and validated from a [`Scenario`].
#[derive(Debug, Clone)]
pub struct Resolved {
    pub space: Space,
    pub maps: Option<MapPair>,
    pub hypothesis: Option<ExpansionHypothesis>,
    pub seed: u64,
    pub x0: Option<f64>,
    pub solve_config: SolveConfig,
}

impl Resolved {
    pub fn require_maps(&self) -> Result<&MapPair> {
        self.maps
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("scenario has no `maps`".into()))
    }

    pub fn require_hypothesis(&self) -> Result<&ExpansionHypothesis> {
        self.hypothesis
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("scenario has no `hypothesis`".into()))
    }

    pub fn solve_x0(&self) -> Result<f64> {
        self.x0
            .ok_or_else(|| Error::InvalidArgument("`run.x0` is required for this command".into()))
    }

    /// Exhaustive on finite carriers unless `samples` is set.
    pub fn strategy(&self, samples: Option<usize>) -> Strategy {
        match (samples, self.space.carrier().is_finite()) {
            (None, true) => Strategy::Exhaustive,
            (n, _) => Strategy::Sampled {
                n: n.unwrap_or(DEFAULT_SAMPLES),
                seed: self.seed,
            },
        }
    }
}

impl Scenario {
    /// The seed actually used: command line, then scenario, then default.
    pub fn effective_seed(&self, override_seed: Option<u64>) -> u64 {
        override_seed.or(self.run.seed).unwrap_or(DEFAULT_SEED)
    }

    pub fn resolve(&self, override_seed: Option<u64>) -> Result<Resolved> {
        let mut space = self.space.build()?;
        if let Some(c) = self.assumptions.complete {
            space = space.assume_complete(c);
        }
        let maps = self
            .maps
            .as_ref()
            .map(|m| Ok::<_, Error>(MapPair::new(m.t.build(space.carrier())?, m.s.build(space.carrier())?)))
            .transpose()?;
        let hypothesis = self
            .hypothesis
            .as_ref()
            .map(|h| h.build(&space, self.assumptions.phi_limit_condition_attested))
            .transpose()?;
        let tol_fix = self.run.tol_fix.unwrap_or(TOL_FIX);
        if !(tol_fix.is_finite() && tol_fix > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tol_fix must be positive, got {tol_fix}"
            )));
        }
        Ok(Resolved {
            space,
            maps,
            hypothesis,
            seed: self.effective_seed(override_seed),
            x0: self.run.x0,
            solve_config: SolveConfig {
                max_steps: self.run.max_steps.unwrap_or(DEFAULT_MAX_STEPS),
                tol_fix,
            },
        })
    }
}

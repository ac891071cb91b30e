//! Scenario-driven front end.
//!
//! A scenario is a JSON document naming a space, an optional map pair and
//! hypothesis, and a run specification. [`run_scenario`] executes it and
//! writes `report.json` (plus `trace.csv` for solves) into an output
//! directory. Exit codes: 0 passed or certified, 2 violations found or not
//! certified, 1 errors.

mod commands;
mod report;
mod scenario;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::solver::{OrbitTrace, TOL_FIX};

pub use commands::{
    execute, random_chains, AuditResult, AuditSummary, AxiomSummary, AxiomsResult, CommandResult, Execution,
    InstanceOracle, LemmasResult, OracleResult, PolygonSummary, SandwichSummary, SolveResult, SpaceSummary, MAX_LISTED,
};
pub use report::{to_json, write_report, write_trace_csv, Outcome, Report, Tolerances, TOOL, VERSION};
pub use scenario::{
    load_scenario, parse_scenario, Assumptions, CarrierSpec, Command, Family, HypothesisSpec, LemmaSpec, MapsSpec,
    Resolved, RunSpec, Scenario, ScenarioError, SequenceSpec, SpaceSpec, DEFAULT_SAMPLES, DEFAULT_SEED,
};

pub const REPORT_FILE: &str = "report.json";
pub const TRACE_FILE: &str = "trace.csv";
pub const BATCH_FILE: &str = "batch.json";

/// Command-line overrides applied on top of a scenario.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub seed: Option<u64>,
}

/// Runs a parsed scenario. The trace is returned for solves.
pub fn run_parsed(scenario: &Scenario, overrides: Overrides) -> (Report, Option<OrbitTrace>) {
    let command = overrides.command.unwrap_or(scenario.run.command);
    let seed = scenario.effective_seed(overrides.seed);
    let mut report = Report::failure(Some(scenario.clone()), String::new());
    report.command = Some(command);
    report.seed = Some(seed);
    report.tolerances = Tolerances::with_fix(scenario.run.tol_fix.unwrap_or(TOL_FIX));

    match scenario
        .resolve(overrides.seed)
        .and_then(|r| execute(scenario, command, &r))
    {
        Ok(exec) => {
            report.conventions = exec.conventions;
            report.outcome = exec.outcome;
            report.exit_code = exec.outcome.exit_code();
            report.result = Some(exec.result);
            report.error = None;
            (report, exec.trace)
        }
        Err(e) => {
            report.error = Some(e.to_string());
            (report, None)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunOutcome {
    pub scenario: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Loads, runs and writes one scenario into `out`.
pub fn run_scenario(path: &Path, out: &Path, overrides: Overrides) -> RunOutcome {
    let name = path.display().to_string();
    let (report, trace) = match load_scenario(path) {
        Ok(s) => run_parsed(&s, overrides),
        Err(e) => (Report::failure(None, e.to_string()), None),
    };
    let mut outcome = RunOutcome {
        scenario: name,
        exit_code: report.exit_code,
        error: report.error.clone(),
    };
    let written = std::fs::create_dir_all(out)
        .and_then(|_| write_report(&report, &out.join(REPORT_FILE)))
        .and_then(|_| match &trace {
            Some(t) => write_trace_csv(t, &out.join(TRACE_FILE)),
            None => Ok(()),
        });
    if let Err(e) = written {
        outcome.exit_code = Outcome::Error.exit_code();
        outcome.error = Some(format!("cannot write to {}: {e}", out.display()));
    }
    outcome
}

/// `*.json` files of `dir`, sorted by name.
pub fn batch_inputs(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every scenario of `dir` concurrently; each writes to
/// `out/<file stem>/`. A summary goes to `out/batch.json`.
pub fn run_batch(dir: &Path, out: &Path, overrides: Overrides) -> std::io::Result<Vec<RunOutcome>> {
    let inputs = batch_inputs(dir)?;
    let outcomes: Vec<RunOutcome> = inputs
        .par_iter()
        .map(|p| {
            let stem = p
                .file_stem()
                .map_or_else(|| "scenario".into(), |s| s.to_string_lossy().into_owned());
            run_scenario(p, &out.join(stem), overrides)
        })
        .collect();
    std::fs::create_dir_all(out)?;
    let summary = to_json(&outcomes).map_err(std::io::Error::other)?;
    std::fs::write(out.join(BATCH_FILE), summary)?;
    Ok(outcomes)
}

/// 1 if any run errored, else 2 if any found violations, else 0.
pub fn combined_exit_code(outcomes: &[RunOutcome]) -> i32 {
    let codes = || outcomes.iter().map(|o| o.exit_code);
    if codes().any(|c| c == 1) {
        1
    } else if codes().any(|c| c == 2) {
        2
    } else {
        0
    }
}

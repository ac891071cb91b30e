use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use super::commands::CommandResult;
use super::scenario::{Command, Scenario};
use crate::analysis::RESOLUTION_FLOOR;
use crate::solver::{OrbitTrace, TOL_FIX};
use crate::spaces::{TOL_AXIOM, TOL_POINT};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Pretty JSON with every float written as `d.ddddddddddddddddde±x`
/// (17 significant digits, enough to round-trip any `f64`).
struct FixedFloats<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

/// Deterministic JSON: struct field order, fixed float format, trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub axiom: f64,
    pub point: f64,
    pub fix: f64,
    pub resolution_floor: f64,
}

impl Tolerances {
    pub fn with_fix(fix: f64) -> Self {
        Tolerances {
            axiom: TOL_AXIOM,
            point: TOL_POINT,
            fix,
            resolution_floor: RESOLUTION_FLOOR,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::with_fix(TOL_FIX)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Passed,
    Failed,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Passed => 0,
            Outcome::Error => 1,
            Outcome::Failed => 2,
        }
    }

    pub fn from_pass(passed: bool) -> Self {
        if passed {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }
}

/// Top-level report document. Exactly one of `result` and `error` is set.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub conventions: Vec<String>,
    pub outcome: Outcome,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<CommandResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    /// Report for a run that failed before producing a result.
    pub fn failure(scenario: Option<Scenario>, error: String) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command: scenario.as_ref().map(|s| s.run.command),
            seed: None,
            scenario,
            tolerances: Tolerances::default(),
            conventions: Vec::new(),
            outcome: Outcome::Error,
            exit_code: Outcome::Error.exit_code(),
            result: None,
            error: Some(error),
        }
    }
}

pub fn write_report(report: &Report, path: &Path) -> io::Result<()> {
    let text = to_json(report).map_err(io::Error::other)?;
    std::fs::write(path, text)
}

/// `step, point, dist_to_next, ratio`: one row per orbit point. `ratio` is
/// `dist_to_next` over the previous row's, blank where undefined.
pub fn write_trace_csv(trace: &OrbitTrace, path: &Path) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(io::Error::other)?;
    w.write_record(["step", "point", "dist_to_next", "ratio"])
        .map_err(io::Error::other)?;
    let fmt = |v: f64| format!("{v:.16e}");
    for (i, &p) in trace.points.iter().enumerate() {
        let dist = trace.successive_distances.get(i).map_or(String::new(), |&d| fmt(d));
        let ratio = match i.checked_sub(1) {
            Some(j) if i < trace.successive_distances.len() => fmt(trace.cauchy.per_step_ratios[j]),
            _ => String::new(),
        };
        w.write_record([i.to_string(), fmt(p), dist, ratio])
            .map_err(io::Error::other)?;
    }
    w.flush()
}

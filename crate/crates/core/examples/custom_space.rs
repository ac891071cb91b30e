//! A user-defined distance on an interval, checked, audited and solved, then
//! the same run driven from a JSON scenario.

use bmlike::cli::{parse_scenario, run_parsed, to_json, Overrides};
use bmlike::solver::{solve, ExpansionHypothesis, Map, MapPair, SolveConfig};
use bmlike::spaces::{check_axioms, Carrier, IntervalCarrier, Space, SpaceKind, Strategy};

const SCENARIO: &str = r#"{
  "name": "squared_abs_custom",
  "space": { "family": "squared_abs", "k": 2.0, "kind": "b_metric" },
  "maps": { "t": { "linear": { "a": 9.0 } }, "s": { "linear": { "a": 9.0 } } },
  "hypothesis": { "phi": { "family": { "affine": { "a": 4.0, "b": 4.0 } } } },
  "run": { "command": "solve", "x0": 5.0 },
  "assumptions": { "complete": true, "phi_limit_condition_attested": true }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // D(x, y) = x + y + |x - y| on [0, 10]: a metric-like distance, twice max
    let carrier = Carrier::Interval(IntervalCarrier::new(0.0, 10.0)?);
    let space = Space::new("twice_max", carrier, 1.0, SpaceKind::MetricLike, |x: f64, y: f64| {
        x + y + (x - y).abs()
    })?
    .assume_complete(true);
    let axioms = check_axioms(&space, Strategy::Sampled { n: 5_000, seed: 9 })?;
    println!("twice_max axioms passed: {}", axioms.passed);

    let maps = MapPair::new(Map::linear(3.0)?, Map::linear(5.0)?);
    let r = solve(
        &space,
        &maps,
        &ExpansionHypothesis::rl(3.0, 0.0),
        10.0,
        SolveConfig::default(),
    )?;
    println!(
        "z = {}, certified {}, {} steps",
        r.candidate,
        r.certified,
        r.trace.points.len() - 1
    );

    let scenario = parse_scenario(SCENARIO)?;
    let (report, _trace) = run_parsed(&scenario, Overrides::default());
    println!("scenario exit code {}", report.exit_code);
    let text = to_json(&report)?;
    println!("{}", text.lines().take(12).collect::<Vec<_>>().join("\n"));
    Ok(())
}

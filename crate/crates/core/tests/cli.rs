use std::path::{Path, PathBuf};
use std::process::Command as Process;

use bmlike::cli::{
    combined_exit_code, load_scenario, parse_scenario, run_batch, run_parsed, run_scenario, to_json, Command,
    Overrides, Report, RunOutcome, Scenario, REPORT_FILE, TRACE_FILE,
};
use serde_json::Value;

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn scenario(name: &str) -> Scenario {
    load_scenario(&scenarios_dir().join(format!("{name}.json"))).unwrap()
}

fn report_json(name: &str, overrides: Overrides) -> (Report, String) {
    let (report, _) = run_parsed(&scenario(name), overrides);
    let text = to_json(&report).unwrap();
    (report, text)
}

fn value(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

/// Byte comparison against `tests/golden/<name>.json`; `BMLIKE_BLESS=1`
/// rewrites the file instead.
fn check_golden(name: &str) {
    let (_, text) = report_json(name, Overrides::default());
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("BMLIKE_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(golden == text, "{name} differs from its golden report");
}

#[test]
fn golden_reports() {
    for name in [
        "nine_scaling_solve",
        "nine_scaling_audit",
        "partial_metric_phi_solve",
        "metric_like_phi_solve",
        "b_metric_phi_solve",
        "sqrt_square_finite_axioms",
        "two_point_oracle",
        "falsification_sweep",
    ] {
        check_golden(name);
    }
}

#[test]
fn solve_scenario_certifies_zero() {
    let (report, text) = report_json("nine_scaling_solve", Overrides::default());
    assert_eq!(report.exit_code, 0);
    let v = value(&text);
    let solve = &v["result"]["solve"];
    assert_eq!(solve["candidate"].as_f64(), Some(0.0));
    assert_eq!(solve["t_residual"].as_f64(), Some(0.0));
    assert_eq!(solve["s_residual"].as_f64(), Some(0.0));
    let lambda = solve["trace"]["cauchy"]["lambda_hat"].as_f64().unwrap();
    assert!((lambda - 4.0 / 9.0).abs() < 1e-9);
    assert_eq!(v["tolerances"]["fix"].as_f64(), Some(1e-10));
    assert_eq!(v["seed"].as_u64(), Some(7));
    assert_eq!(v["version"].as_str(), Some(env!("CARGO_PKG_VERSION")));
}

#[test]
fn audit_scenario_finds_the_gap() {
    let (report, text) = report_json("nine_scaling_audit", Overrides::default());
    assert_eq!(report.exit_code, 2);
    let v = value(&text);
    let first = &v["result"]["audit"]["full"]["violations"][0];
    assert_eq!((first["x"].as_f64(), first["y"].as_f64()), (Some(0.0), Some(1.0)));
    assert_eq!((first["lhs"].as_f64(), first["rhs"].as_f64()), (Some(1.0), Some(3.0)));
    let restricted = &v["result"]["audit"]["restricted"]["audit"];
    assert_eq!(restricted["passed"].as_bool(), Some(true));
    assert_eq!(restricted["violation_count"].as_u64(), Some(0));
}

#[test]
fn command_override_switches_solve_to_audit() {
    let overrides = Overrides {
        command: Some(Command::Audit),
        seed: None,
    };
    let (report, _) = report_json("nine_scaling_solve", overrides);
    assert_eq!(report.command, Some(Command::Audit));
    assert_eq!(report.exit_code, 2);
}

#[test]
fn missing_k_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_scenario(
        &scenarios_dir().join("missing_k.json"),
        dir.path(),
        Overrides::default(),
    );
    assert_eq!(o.exit_code, 1);
    let err = o.error.unwrap();
    assert!(err.contains("`space`") && err.contains("missing field `k`"), "{err}");
    let v = value(&std::fs::read_to_string(dir.path().join(REPORT_FILE)).unwrap());
    assert_eq!(v["exit_code"].as_i64(), Some(1));
    assert_eq!(v["outcome"].as_str(), Some("error"));
}

#[test]
fn schema_errors_name_the_field_path() {
    let text = r#"{"name": "x", "space": {"family": "sqrt_square", "k": 2.0},
        "hypothesis": {"rl": {"r": "three", "l": 0.0}}, "run": {"command": "solve"}}"#;
    let err = parse_scenario(text).unwrap_err().to_string();
    assert!(err.contains("hypothesis.rl.r"), "{err}");

    let unknown = r#"{"name": "x", "space": {"family": "euclid", "k": 2.0}, "run": {"command": "axioms"}}"#;
    let err = parse_scenario(unknown).unwrap_err().to_string();
    assert!(
        err.contains("space.family") && err.contains("sqrt_square") && err.contains("table"),
        "{err}"
    );
}

#[test]
fn out_of_range_numbers_are_errors() {
    let mut s = scenario("nine_scaling_solve");
    s.hypothesis = Some(bmlike::cli::HypothesisSpec::Rl { r: 2.0, l: 0.0 });
    assert_eq!(run_parsed(&s, Overrides::default()).0.exit_code, 1);

    let mut s = scenario("nine_scaling_solve");
    s.space.k = 0.5;
    assert_eq!(run_parsed(&s, Overrides::default()).0.exit_code, 1);

    let mut s = scenario("nine_scaling_solve");
    s.assumptions.complete = Some(false);
    let (r, _) = run_parsed(&s, Overrides::default());
    assert_eq!(r.exit_code, 1);
    assert!(r.error.unwrap().contains("complete"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for entry in std::fs::read_dir(scenarios_dir()).unwrap() {
        let path = entry.unwrap().path();
        let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
        if stem == "falsification_sweep" {
            continue; // covered by the golden comparison
        }
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        let outs: Vec<RunOutcome> = dirs
            .iter()
            .map(|d| run_scenario(&path, d.path(), Overrides::default()))
            .collect();
        assert_eq!(outs[0].exit_code, outs[1].exit_code);
        for file in [REPORT_FILE, TRACE_FILE] {
            let a = std::fs::read(dirs[0].path().join(file));
            let b = std::fs::read(dirs[1].path().join(file));
            match (a, b) {
                (Ok(a), Ok(b)) => assert!(a == b, "{stem}/{file} differs"),
                (Err(_), Err(_)) => {}
                _ => panic!("{stem}/{file} written once"),
            }
        }
    }
}

#[test]
fn seed_override_changes_samples_not_format() {
    let seeded = |seed| {
        report_json(
            "nine_scaling_audit",
            Overrides {
                command: None,
                seed: Some(seed),
            },
        )
        .1
    };
    let (a, b) = (seeded(1), seeded(2));
    assert_ne!(a, b);
    assert_eq!(value(&a)["seed"].as_u64(), Some(1));
    assert_eq!(seeded(1), a);
}

#[test]
fn scenario_echo_round_trips() {
    for entry in std::fs::read_dir(scenarios_dir()).unwrap() {
        let path = entry.unwrap().path();
        let Ok(s) = load_scenario(&path) else { continue };
        let (_, text) = {
            let (r, _) = run_parsed(&s, Overrides::default());
            (r.clone(), to_json(&r).unwrap())
        };
        let echo = value(&text)["scenario"].clone();
        let back: Scenario = serde_json::from_value(echo).unwrap();
        assert_eq!(back, s, "{}", path.display());
    }
}

#[test]
fn floats_use_seventeen_significant_digits() {
    let (_, text) = report_json("nine_scaling_solve", Overrides::default());
    assert!(text.contains("\"candidate\": 0.0000000000000000e0"));
    assert!(text.contains("\"k\": 2.0000000000000000e0"));
}

#[test]
fn trace_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_scenario(
        &scenarios_dir().join("nine_scaling_solve.json"),
        dir.path(),
        Overrides::default(),
    );
    assert_eq!(o.exit_code, 0);
    let mut rdr = csv::Reader::from_path(dir.path().join(TRACE_FILE)).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["step", "point", "dist_to_next", "ratio"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let num = |s: &str| s.parse::<f64>().unwrap();
    assert_eq!(num(&rows[0][1]), 81.0);
    assert_eq!(num(&rows[0][2]), 144.0);
    assert_eq!(&rows[0][3], "");
    assert_eq!(num(&rows[2][3]), 16.0 / 36.0);
    let last = rows.last().unwrap();
    assert_eq!(num(&last[1]), 0.0);
    assert_eq!((&last[2], &last[3]), ("", ""));
}

#[test]
fn batch_runs_every_scenario() {
    let out = tempfile::tempdir().unwrap();
    let outcomes = run_batch(&scenarios_dir(), out.path(), Overrides::default()).unwrap();
    let count = std::fs::read_dir(scenarios_dir()).unwrap().count();
    assert_eq!(outcomes.len(), count);
    for o in &outcomes {
        let stem = Path::new(&o.scenario).file_stem().unwrap();
        assert!(out.path().join(stem).join(REPORT_FILE).is_file());
    }
    let code = |name: &str| outcomes.iter().find(|o| o.scenario.ends_with(name)).unwrap().exit_code;
    assert_eq!(code("nine_scaling_solve.json"), 0);
    assert_eq!(code("nine_scaling_audit.json"), 2);
    assert_eq!(code("missing_k.json"), 1);
    assert_eq!(combined_exit_code(&outcomes), 1);
    assert!(out.path().join("batch.json").is_file());
}

#[test]
fn exit_codes_partition_outcomes() {
    let o = |c| RunOutcome {
        scenario: String::new(),
        exit_code: c,
        error: None,
    };
    assert_eq!(combined_exit_code(&[o(0), o(0)]), 0);
    assert_eq!(combined_exit_code(&[o(0), o(2)]), 2);
    assert_eq!(combined_exit_code(&[o(2), o(1)]), 1);
    for entry in std::fs::read_dir(scenarios_dir()).unwrap() {
        let (r, _) = match load_scenario(&entry.unwrap().path()) {
            Ok(s) => run_parsed(&s, Overrides::default()),
            Err(_) => continue,
        };
        let expected = match r.outcome {
            bmlike::cli::Outcome::Passed => 0,
            bmlike::cli::Outcome::Failed => 2,
            bmlike::cli::Outcome::Error => 1,
        };
        assert_eq!(r.exit_code, expected);
        assert_eq!(r.result.is_some(), r.error.is_none());
    }
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_bmlike"))
}

#[test]
fn binary_exit_codes() {
    let out = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        bin()
            .arg("--scenario")
            .arg(scenarios_dir().join(format!("{name}.json")))
            .arg("--out")
            .arg(out.path().join(name))
            .args(extra)
            .status()
            .unwrap()
            .code()
    };
    assert_eq!(run("nine_scaling_solve", &[]), Some(0));
    assert!(out.path().join("nine_scaling_solve").join(TRACE_FILE).is_file());
    assert_eq!(run("nine_scaling_audit", &[]), Some(2));
    assert_eq!(run("missing_k", &[]), Some(1));
    assert_eq!(
        run("nine_scaling_solve", &["--command", "audit", "--seed", "3"]),
        Some(2)
    );
    let no_input = bin().arg("--out").arg(out.path()).status().unwrap().code();
    assert_eq!(no_input, Some(1));
}

#[test]
fn binary_batch_mode() {
    let out = tempfile::tempdir().unwrap();
    let code = bin()
        .arg("--batch")
        .arg(scenarios_dir())
        .arg("--out")
        .arg(out.path())
        .output()
        .unwrap()
        .status
        .code();
    assert_eq!(code, Some(1)); // missing_k.json is an error
    assert!(out.path().join("b_metric_phi_solve").join(REPORT_FILE).is_file());
}

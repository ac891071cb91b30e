use std::path::PathBuf;
use std::process::ExitCode;

use bmlike::cli::{combined_exit_code, run_batch, run_scenario, Command, Overrides};
use clap::Parser;

/// Run fixed point scenarios on b-metric-like spaces.
#[derive(Debug, Parser)]
#[command(name = "bmlike", version)]
struct Args {
    /// Scenario file.
    #[arg(long, required_unless_present = "batch", conflicts_with = "batch")]
    scenario: Option<PathBuf>,
    /// Directory of scenario files, run concurrently.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides the scenario's command.
    #[arg(long, value_enum)]
    command: Option<Command>,
    /// Overrides the scenario's seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let overrides = Overrides {
        command: args.command,
        seed: args.seed,
    };
    let code = match (&args.scenario, &args.batch) {
        (Some(path), _) => {
            let o = run_scenario(path, &args.out, overrides);
            if let Some(e) = &o.error {
                eprintln!("error: {e}");
            }
            o.exit_code
        }
        (None, Some(dir)) => match run_batch(dir, &args.out, overrides) {
            Ok(outcomes) => {
                for o in &outcomes {
                    println!("{}\t{}", o.exit_code, o.scenario);
                    if let Some(e) = &o.error {
                        eprintln!("error in {}: {e}", o.scenario);
                    }
                }
                combined_exit_code(&outcomes)
            }
            Err(e) => {
                eprintln!("error: cannot run batch {}: {e}", dir.display());
                1
            }
        },
        (None, None) => unreachable!("clap requires one of --scenario and --batch"),
    };
    ExitCode::from(code as u8)
}

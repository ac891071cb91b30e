//! Inverse-orbit solve of `T x = 9x`, `S = id` on `[0, inf)` with
//! `D(x, y) = (sqrt x + sqrt y)^2`, starting from 81.

use bmlike::solver::{solve, ExpansionHypothesis, Map, MapPair, SolveConfig};
use bmlike::spaces::builtin;

fn main() -> bmlike::Result<()> {
    let space = builtin::sqrt_square();
    let maps = MapPair::new(Map::linear(9.0)?, Map::identity());
    let report = solve(
        &space,
        &maps,
        &ExpansionHypothesis::rl(3.0, 0.0),
        81.0,
        SolveConfig::default(),
    )?;

    for (i, x) in report.trace.points.iter().take(8).enumerate() {
        println!("x{i:<2} = {x:e}");
    }
    println!(
        "... {} points, stopped by {:?}",
        report.trace.points.len(),
        report.trace.terminated_by
    );
    println!("candidate z      = {}", report.candidate);
    println!("D#(z, Tz), D#(z, Sz) = {}, {}", report.t_residual, report.s_residual);
    println!(
        "lambda_hat       = {} ({:?})",
        report.trace.cauchy.lambda_hat, report.trace.cauchy.verdict
    );
    println!("certified        = {}", report.certified);
    println!(
        "orbit audit      = {} of {} pairs violate",
        report.hypothesis_audit.violations.len(),
        report.hypothesis_audit.checked_pairs
    );
    Ok(())
}

//! Exhaustive check on a three-point table: every bijection pair, the
//! expansion filter, common fixed points, and agreement with the solver.

use bmlike::oracle::{audit_theorem_finite, cross_validate, falsification_sweep, FiniteInstance, SweepConfig};
use bmlike::solver::ExpansionHypothesis;
use bmlike::spaces::{Space, SpaceKind};

fn main() -> bmlike::Result<()> {
    let table = vec![vec![0.0, 1.0, 3.0], vec![1.0, 2.0, 2.0], vec![3.0, 2.0, 0.0]];
    let labels = ["a", "b", "c"].map(String::from).to_vec();
    let space = Space::from_table("abc", labels, table, 2.0, SpaceKind::BMetricLike)?;
    let instance = FiniteInstance::new(space)?;
    let hyp = ExpansionHypothesis::rl(2.5, 0.0);

    // a bijection of a finite set cannot push every pair R > 1 times further
    // apart, so on several points the hypothesis usually filters everything
    let audit = audit_theorem_finite(&instance, &hyp)?;
    println!(
        "{} map pairs, {} satisfy the hypothesis, {} counterexamples",
        audit.instances_checked,
        audit.hypothesis_holders,
        audit.counterexamples.len()
    );
    let cv = cross_validate(&instance, &hyp)?;
    println!("solver runs {}, disagreements {}", cv.solves, cv.disagreements);

    let sweep = falsification_sweep(&SweepConfig {
        max_size: 2,
        ..SweepConfig::default()
    })?;
    println!(
        "sweep up to 2 points: {} spaces, {} instances, {} counterexamples",
        sweep.spaces_accepted,
        sweep.instances_checked,
        sweep.counterexamples.len()
    );
    Ok(())
}

//! Axiom checks on the built-in spaces, a too-small K, and the tightest K
//! of a finite restriction.

use bmlike::spaces::{builtin, check_axioms, min_valid_k, Carrier, FiniteCarrier, Strategy};

fn main() -> bmlike::Result<()> {
    let sampled = Strategy::Sampled { n: 20_000, seed: 1 };
    for space in [
        builtin::sqrt_square(),
        builtin::squared_abs(),
        builtin::max_partial(),
        builtin::sum_metric_like(),
        builtin::abs_metric(),
    ] {
        let r = check_axioms(&space, sampled)?;
        println!(
            "{:<16} {:<14} K = {}  passed = {}",
            space.name(),
            space.kind().to_string(),
            space.k_const(),
            r.passed
        );
    }

    let tight = builtin::sqrt_square().with_k(1.0)?;
    let r = check_axioms(&tight, sampled)?;
    if let Some(v) = r.violations.first() {
        println!("K = 1: {} fails at {:?}, {} > {}", v.axiom, v.points, v.lhs, v.rhs);
    }

    let finite = builtin::sqrt_square_on(Carrier::Finite(FiniteCarrier::new(vec![0.0, 1.0, 4.0])?));
    println!("min_valid_k on {{0, 1, 4}} = {}", min_valid_k(&finite)?);
    Ok(())
}

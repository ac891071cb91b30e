//! Solves under a control function `phi(t) = 2 + 0 t` on the partial
//! metric `max(x, y)` with `T = S = 4x`.

use bmlike::solver::{audit, solve, ExpansionHypothesis, Map, MapPair, PhiFamily, SolveConfig};
use bmlike::spaces::{builtin, Strategy};

fn main() -> bmlike::Result<()> {
    let space = builtin::max_partial();
    let maps = MapPair::new(Map::linear(4.0)?, Map::linear(4.0)?);
    // the limit condition on phi is a caller promise, not something sampled
    let hyp = ExpansionHypothesis::phi_family(&space, PhiFamily::Affine { a: 2.0, b: 0.0 }, true);
    hyp.validate(&space)?;

    let sampled = audit(&space, &maps, &hyp, Strategy::Sampled { n: 5_000, seed: 4 })?;
    println!(
        "sampled audit: {} violations in {} pairs",
        sampled.violations.len(),
        sampled.checked_pairs
    );

    let r = solve(&space, &maps, &hyp, 1.0, SolveConfig::default())?;
    println!(
        "z = {}, residuals {} {}, certified {}",
        r.candidate, r.t_residual, r.s_residual, r.certified
    );

    let low = ExpansionHypothesis::phi_family(&space, PhiFamily::Affine { a: 0.5, b: 0.0 }, true);
    match low.validate(&space) {
        Ok(()) => println!("phi = 0.5 accepted"),
        Err(e) => println!("phi = 0.5 rejected: {e}"),
    }
    Ok(())
}

//! Audits `D(Tx, Sy) >= R D(x, y)` over the whole half-line and over the
//! wedge `y <= 3x`, where it holds.

use bmlike::solver::{audit_rl_pairs, Map, MapPair};
use bmlike::spaces::{builtin, pairs, Strategy};

fn main() -> bmlike::Result<()> {
    let space = builtin::sqrt_square();
    let maps = MapPair::new(Map::linear(9.0)?, Map::identity());
    let all = pairs(space.carrier(), Strategy::Sampled { n: 10_000, seed: 7 })?;

    let full = audit_rl_pairs(&space, &maps, 3.0, 0.0, &all)?;
    println!(
        "full domain: {} of {} pairs violate",
        full.violations.len(),
        full.checked_pairs
    );
    for v in full.violations.iter().take(3) {
        println!(
            "  (x, y) = ({}, {}): D(Tx, Sy) = {} < R D(x, y) = {}",
            v.x, v.y, v.lhs, v.rhs
        );
    }

    let wedge: Vec<_> = all.into_iter().filter(|&(x, y)| y <= 3.0 * x).collect();
    let restricted = audit_rl_pairs(&space, &maps, 3.0, 0.0, &wedge)?;
    println!(
        "y <= 3x: {} of {} pairs violate",
        restricted.violations.len(),
        restricted.checked_pairs
    );
    Ok(())
}

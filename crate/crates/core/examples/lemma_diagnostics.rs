//! Polygon bound on a chain, geometric Cauchy certification, and the
//! limit sandwich for `x_n = 4 / 9^n`.

use bmlike::analysis::{geometric_cauchy_check, limit_sandwich_check, polygon_bound};
use bmlike::spaces::builtin;

fn main() -> bmlike::Result<()> {
    let space = builtin::sqrt_square();

    let chain = [0.0, 2.0, 7.5, 1.0, 30.0];
    let p = polygon_bound(&space, &chain)?;
    println!("polygon: D(x0, x4) = {} <= {} ({})", p.lhs, p.rhs, p.holds);

    for lambda in [0.3, 0.6] {
        let d: Vec<f64> = (0..40).map(|n| 10.0 * f64::powi(lambda, n)).collect();
        let v = geometric_cauchy_check(&d, space.k_const())?;
        println!("ratio {lambda}: lambda_hat = {} -> {:?}", v.lambda_hat, v.verdict);
    }

    let seq: Vec<f64> = (0..64).map(|n| 4.0 / 9f64.powi(n)).collect();
    for y in [0.0, 1.0, 25.0] {
        let b = limit_sandwich_check(&space, &seq, 0.0, y, 1e-6)?;
        println!("y = {y}: {} <= {:e} <= {} ({})", b.lower, b.estimate, b.upper, b.holds);
    }
    Ok(())
}

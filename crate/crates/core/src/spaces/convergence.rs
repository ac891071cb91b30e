use serde::Serialize;

use super::Space;

/// Minimum number of trailing entries inspected by finite-prefix rules.
pub const MIN_TAIL: usize = 8;

/// Trailing window used by every finite-prefix limit decision: the last
/// quarter of the prefix, at least [`MIN_TAIL`] entries, at most `len`.
pub fn tail_window(len: usize) -> usize {
    len.div_ceil(4).max(MIN_TAIL).min(len)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    Converged,
    NotConverged,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceCheck {
    pub verdict: Convergence,
    /// `|D(x, x_n) - D(x, x)|` at the last entry of the prefix.
    pub gap: f64,
    /// Largest gap over the tail window.
    pub max_tail_gap: f64,
    pub window: usize,
}

/// Decides `x_n -> x` in the b-metric-like sense, `D(x, x_n) -> D(x, x)`,
/// from a finite prefix.
///
/// Converged when every gap in the tail window is below `tol`. Prefixes
/// shorter than [`MIN_TAIL`] and tails whose gap is still shrinking are
/// Inconclusive; anything else is NotConverged.
pub fn converges_to(space: &Space, seq: &[f64], x: f64, tol: f64) -> ConvergenceCheck {
    let self_dist = space.dist(x, x);
    let gaps: Vec<f64> = seq.iter().map(|&p| (space.dist(x, p) - self_dist).abs()).collect();
    let window = tail_window(gaps.len());
    let tail = &gaps[gaps.len() - window..];
    let gap = tail.last().copied().unwrap_or(f64::NAN);
    let max_tail_gap = tail.iter().copied().fold(0.0, f64::max);

    let verdict = if gaps.len() < MIN_TAIL {
        Convergence::Inconclusive
    } else if tail.iter().all(|&g| g < tol) {
        Convergence::Converged
    } else if gap < tail[0] {
        Convergence::Inconclusive
    } else {
        Convergence::NotConverged
    };
    ConvergenceCheck {
        verdict,
        gap,
        max_tail_gap,
        window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::builtin;

    #[test]
    fn window_sizes() {
        assert_eq!(tail_window(0), 0);
        assert_eq!(tail_window(5), 5);
        assert_eq!(tail_window(8), 8);
        assert_eq!(tail_window(40), 10);
        assert_eq!(tail_window(41), 11);
    }

    #[test]
    fn geometric_sequence_to_zero() {
        let s = builtin::sqrt_square();
        let seq: Vec<f64> = (0..60).map(|n| 9f64.powi(-n)).collect();
        let c = converges_to(&s, &seq, 0.0, 1e-12);
        assert_eq!(c.verdict, Convergence::Converged);
    }

    #[test]
    fn constant_sequence() {
        let s = builtin::sqrt_square();
        let c = converges_to(&s, &[3.5; 20], 3.5, 1e-12);
        assert_eq!(c.verdict, Convergence::Converged);
        assert_eq!(c.gap, 0.0);
    }

    #[test]
    fn limit_is_self_distance_not_zero() {
        // D(1, 1 + 1/n) -> 4 = D(1, 1)
        let s = builtin::sqrt_square();
        let seq: Vec<f64> = (1..=20_000).map(|n| 1.0 + 1.0 / n as f64).collect();
        let c = converges_to(&s, &seq, 1.0, 1e-3);
        assert_eq!(c.verdict, Convergence::Converged);
        // the gap is D(1, x_n) - 4, which is strictly positive
        assert!(c.gap > 0.0);
    }

    #[test]
    fn divergent_and_short_prefixes() {
        let s = builtin::abs_metric();
        let seq: Vec<f64> = (0..40).map(|n| n as f64).collect();
        assert_eq!(converges_to(&s, &seq, 0.0, 1e-6).verdict, Convergence::NotConverged);
        assert_eq!(
            converges_to(&s, &[0.0; 3], 0.0, 1e-6).verdict,
            Convergence::Inconclusive
        );
        let slow: Vec<f64> = (1..40).map(|n| 1.0 / n as f64).collect();
        assert_eq!(converges_to(&s, &slow, 0.0, 1e-6).verdict, Convergence::Inconclusive);
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Carrier, IntervalCarrier};
use crate::error::{Error, Result};

/// How a checker covers the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Every tuple of carrier points. Finite carriers only.
    Exhaustive,
    /// `n` tuples: all combinations of anchor points first, then seeded draws.
    Sampled { n: usize, seed: u64 },
}

const HALTON_BASES: [u64; 3] = [2, 3, 5];

/// Seeded point source.
///
/// On intervals, draws alternate between a Halton low-discrepancy sequence
/// (one base per tuple slot) and uniform random points over the sampled
/// range. Finite carriers draw uniformly among their points.
pub struct PointSampler<'a> {
    carrier: &'a Carrier,
    rng: ChaCha8Rng,
    counters: [u64; 3],
}

impl<'a> PointSampler<'a> {
    pub fn new(carrier: &'a Carrier, seed: u64) -> Self {
        PointSampler {
            carrier,
            rng: ChaCha8Rng::seed_from_u64(seed),
            counters: [0; 3],
        }
    }

    /// Next point for tuple position `slot` (0, 1 or 2).
    pub fn draw(&mut self, slot: usize) -> f64 {
        match self.carrier {
            Carrier::Finite(f) => f.points()[self.rng.gen_range(0..f.len())],
            Carrier::Interval(iv) => {
                let slot = slot % HALTON_BASES.len();
                self.counters[slot] += 1;
                let n = self.counters[slot];
                let u = if n.is_multiple_of(2) {
                    radical_inverse(n / 2, HALTON_BASES[slot])
                } else {
                    self.rng.gen::<f64>()
                };
                scale(iv, u)
            }
        }
    }
}

fn scale(iv: &IntervalCarrier, u: f64) -> f64 {
    let hi = iv.sample_upper();
    (iv.lower() + (hi - iv.lower()) * u).min(hi)
}

fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while n > 0 {
        r += (n % base) as f64 * f;
        n /= base;
        f *= inv;
    }
    r
}

/// Points every sampled run must include: interval endpoints, 0 and 1 when
/// inside the interval, or all points of a finite carrier.
pub(crate) fn anchors(carrier: &Carrier) -> Vec<f64> {
    match carrier {
        Carrier::Finite(f) => f.points().to_vec(),
        Carrier::Interval(iv) => {
            let mut out = vec![iv.lower()];
            for p in [0.0, 1.0, iv.upper()] {
                if carrier.contains(p) && !out.contains(&p) {
                    out.push(p);
                }
            }
            out
        }
    }
}

pub fn pairs(carrier: &Carrier, strategy: Strategy) -> Result<Vec<(f64, f64)>> {
    match strategy {
        Strategy::Exhaustive => {
            let f = carrier.as_finite().ok_or(Error::ExhaustiveOnInfiniteCarrier)?;
            let p = f.points();
            Ok(p.iter().flat_map(|&x| p.iter().map(move |&y| (x, y))).collect())
        }
        Strategy::Sampled { n, seed } => {
            let a = anchors(carrier);
            let mut out: Vec<(f64, f64)> = a.iter().flat_map(|&x| a.iter().map(move |&y| (x, y))).take(n).collect();
            let mut sampler = PointSampler::new(carrier, seed);
            while out.len() < n {
                out.push((sampler.draw(0), sampler.draw(1)));
            }
            Ok(out)
        }
    }
}

pub fn triples(carrier: &Carrier, strategy: Strategy) -> Result<Vec<[f64; 3]>> {
    match strategy {
        Strategy::Exhaustive => {
            let f = carrier.as_finite().ok_or(Error::ExhaustiveOnInfiniteCarrier)?;
            Ok(cube(f.points()))
        }
        Strategy::Sampled { n, seed } => {
            let mut out = cube(&anchors(carrier));
            out.truncate(n);
            let mut sampler = PointSampler::new(carrier, seed);
            while out.len() < n {
                out.push([sampler.draw(0), sampler.draw(1), sampler.draw(2)]);
            }
            Ok(out)
        }
    }
}

fn cube(p: &[f64]) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(p.len().pow(3));
    for &x in p {
        for &y in p {
            for &z in p {
                out.push([x, y, z]);
            }
        }
    }
    out
}

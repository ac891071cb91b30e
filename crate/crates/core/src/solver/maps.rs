use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{Carrier, Space, Strategy};

pub type PointFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An onto self-map together with a deterministic preimage selector.
#[derive(Clone)]
pub struct Map {
    label: String,
    forward: PointFn,
    preimage: PointFn,
}

impl fmt::Debug for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Map").field(&self.label).finish()
    }
}

impl Map {
    pub fn new<F, P>(label: impl Into<String>, forward: F, preimage: P) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        P: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Map {
            label: label.into(),
            forward: Arc::new(forward),
            preimage: Arc::new(preimage),
        }
    }

    pub fn identity() -> Self {
        Map::new("identity", |x| x, |y| y)
    }

    /// `x -> a x` with preimage `y / a`, for `a > 0`.
    pub fn linear(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidMap(format!(
                "linear coefficient must be positive, got {a}"
            )));
        }
        Ok(Map::new(format!("linear{{{a}}}"), move |x| a * x, move |y| y / a))
    }

    /// Permutation of a finite carrier: point `i` goes to point `table[i]`.
    pub fn permutation(carrier: &Carrier, table: &[usize]) -> Result<Self> {
        let f = carrier
            .as_finite()
            .ok_or_else(|| Error::InvalidMap("permutation needs a finite carrier".into()))?;
        let n = f.len();
        if table.len() != n {
            return Err(Error::InvalidMap(format!(
                "permutation of length {} on {n} points",
                table.len()
            )));
        }
        let mut inverse = vec![usize::MAX; n];
        for (i, &j) in table.iter().enumerate() {
            if j >= n || inverse[j] != usize::MAX {
                return Err(Error::InvalidMap(format!("{table:?} is not a permutation")));
            }
            inverse[j] = i;
        }
        let points: Arc<[f64]> = f.points().into();
        let lookup = {
            let points = points.clone();
            move |x: f64| points.iter().position(|&p| p == x)
        };
        let fwd = {
            let (points, table, lookup) = (points.clone(), table.to_vec(), lookup.clone());
            move |x: f64| lookup(x).map_or(f64::NAN, |i| points[table[i]])
        };
        let pre = move |y: f64| lookup(y).map_or(f64::NAN, |j| points[inverse[j]]);
        Ok(Map::new(format!("permutation{table:?}"), fwd, pre))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, x: f64) -> f64 {
        (self.forward)(x)
    }

    pub fn preimage(&self, y: f64) -> f64 {
        (self.preimage)(y)
    }
}

/// Declarative built-in maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapSpec {
    Identity,
    Linear { a: f64 },
    Permutation { table: Vec<usize> },
}

impl MapSpec {
    pub fn build(&self, carrier: &Carrier) -> Result<Map> {
        match self {
            MapSpec::Identity => Ok(Map::identity()),
            MapSpec::Linear { a } => {
                match carrier {
                    Carrier::Interval(iv) if iv.lower() == 0.0 && iv.upper() == f64::INFINITY => {}
                    _ => return Err(Error::InvalidMap("linear maps are defined on [0, inf)".into())),
                }
                Map::linear(*a)
            }
            MapSpec::Permutation { table } => Map::permutation(carrier, table),
        }
    }
}

/// The pair `(T, S)`.
#[derive(Debug, Clone)]
pub struct MapPair {
    pub t: Map,
    pub s: Map,
}

impl MapPair {
    pub fn new(t: Map, s: Map) -> Self {
        MapPair { t, s }
    }

    /// Checks `T(T^-1(y)) = y`, `S(S^-1(y)) = y` and that preimages and images
    /// stay in the carrier, over the given points.
    pub fn check_round_trip(&self, space: &Space, strategy: Strategy) -> Result<()> {
        let points: Vec<f64> = crate::spaces::pairs(space.carrier(), strategy)?
            .into_iter()
            .map(|(x, _)| x)
            .collect();
        for (step, &y) in points.iter().enumerate() {
            for m in [&self.t, &self.s] {
                let x = m.preimage(y);
                let image = m.apply(x);
                let carrier = space.carrier();
                if !carrier.contains(x) || !carrier.contains(m.apply(y)) || !space.same_point(image, y) {
                    return Err(Error::PreimageBroken {
                        step,
                        target: y,
                        preimage: x,
                        image,
                    });
                }
            }
        }
        Ok(())
    }
}

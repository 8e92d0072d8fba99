//! Seeded synthetic point sets.
//!
//! Coordinates are uniform over the given boxes. Weights follow one of three
//! laws: uniform on `[1, n]`; exponential frequency, where rank `r` turns up
//! with probability proportional to `2^-r`; and Zipf, where weight `v` has
//! frequency proportional to `v^-s`.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Zipf};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{FourSidedRange, ThreeSidedRange, WeightedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Distribution {
    Uniform,
    ExpFreq,
    Zipf { s: f64 },
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Uniform => f.write_str("uniform"),
            Distribution::ExpFreq => f.write_str("exp-freq"),
            Distribution::Zipf { s } => write!(f, "zipf:{s}"),
        }
    }
}

/// Accepts `uniform`, `exp-freq`, `zipf` (s = 1), `zipf:S` and `zipf(S)`.
impl FromStr for Distribution {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "uniform" => return Ok(Distribution::Uniform),
            "exp-freq" | "expfreq" => return Ok(Distribution::ExpFreq),
            "zipf" => return Ok(Distribution::Zipf { s: 1.0 }),
            _ => {}
        }
        let exponent = t
            .strip_prefix("zipf:")
            .or_else(|| t.strip_prefix("zipf(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| Error::Generator(format!("unknown distribution {t:?}")))?;
        let s: f64 = exponent.parse().map_err(|_| Error::Generator(format!("bad zipf exponent {exponent:?}")))?;
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Generator(format!("zipf exponent must be positive, got {s}")));
        }
        Ok(Distribution::Zipf { s })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub distribution: Distribution,
    pub seed: u64,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    /// Largest weight for the uniform and Zipf laws; `n` when absent.
    pub max_weight: Option<u64>,
}

impl GeneratorSpec {
    pub fn new(n: usize, distribution: Distribution, seed: u64) -> Self {
        GeneratorSpec { n, distribution, seed, x_range: (0.0, 1.0), y_range: (0.0, 1.0), max_weight: None }
    }

    fn validate(&self) -> Result<()> {
        for (lo, hi) in [self.x_range, self.y_range] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Generator(format!("coordinate range [{lo}, {hi}) is empty or unbounded")));
            }
        }
        if self.max_weight == Some(0) {
            return Err(Error::Generator("max weight must be at least 1".into()));
        }
        Ok(())
    }

    /// Points with ids `0..n`. Equal specs give equal output.
    pub fn generate(&self) -> Result<Vec<WeightedPoint>> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let weights = self.weights(&mut rng)?;
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        Ok(weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                let x = rng.random_range(x0..x1);
                let y = rng.random_range(y0..y1);
                WeightedPoint { id: i as u64, x, y, w }
            })
            .collect())
    }

    fn weights(&self, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
        let n = self.n;
        let cap = self.max_weight.unwrap_or(n.max(1) as u64);
        Ok(match self.distribution {
            Distribution::Uniform => (0..n).map(|_| rng.random_range(1..=cap)).collect(),
            Distribution::ExpFreq => {
                let top = n.max(1).ilog2();
                let odds = WeightedIndex::new((0..=top).map(|r| 0.5f64.powi(r as i32)))
                    .map_err(|e| Error::Generator(e.to_string()))?;
                (0..n)
                    .map(|_| {
                        let r = odds.sample(rng) as u32;
                        rng.random_range(1u64 << r..1u64 << (r + 1))
                    })
                    .collect()
            }
            Distribution::Zipf { s } => {
                let z = Zipf::new(cap as f64, s).map_err(|e| Error::Generator(e.to_string()))?;
                (0..n).map(|_| z.sample(rng) as u64).collect()
            }
        })
    }
}

/// Random query bounds fitted to a point set. About a third of the bounds
/// land exactly on a point coordinate so closed-boundary cases get hit.
#[derive(Debug, Clone)]
pub struct QuerySampler {
    xs: Vec<f64>,
    ys: Vec<f64>,
    x_span: (f64, f64),
    y_span: (f64, f64),
    log_total: f64,
    n: usize,
}

impl QuerySampler {
    pub fn new(points: &[WeightedPoint]) -> Self {
        let xs: Vec<f64> = points.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.y).collect();
        let span = |v: &[f64]| {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if lo.is_finite() {
                let pad = ((hi - lo) * 0.05).max(1.0);
                (lo - pad, hi + pad)
            } else {
                (0.0, 1.0)
            }
        };
        let total: u128 = points.iter().map(|p| p.w as u128).sum();
        QuerySampler {
            x_span: span(&xs),
            y_span: span(&ys),
            xs,
            ys,
            log_total: (total.max(1) as f64).log2(),
            n: points.len(),
        }
    }

    fn coord<R: Rng>(rng: &mut R, pool: &[f64], span: (f64, f64)) -> f64 {
        if !pool.is_empty() && rng.random_bool(1.0 / 3.0) {
            pool[rng.random_range(0..pool.len())]
        } else {
            rng.random_range(span.0..span.1)
        }
    }

    fn pair<R: Rng>(rng: &mut R, pool: &[f64], span: (f64, f64)) -> (f64, f64) {
        let a = Self::coord(rng, pool, span);
        let b = Self::coord(rng, pool, span);
        (a.min(b), a.max(b))
    }

    pub fn three_sided<R: Rng>(&self, rng: &mut R) -> ThreeSidedRange {
        let (x1, x2) = Self::pair(rng, &self.xs, self.x_span);
        let y = Self::coord(rng, &self.ys, self.y_span);
        ThreeSidedRange { x1, x2, y }
    }

    pub fn four_sided<R: Rng>(&self, rng: &mut R) -> FourSidedRange {
        let (a, b) = Self::pair(rng, &self.xs, self.x_span);
        let (c, d) = Self::pair(rng, &self.ys, self.y_span);
        FourSidedRange { a, b, c, d }
    }

    /// A query weight, log-uniform up to twice the total weight.
    pub fn weight<R: Rng>(&self, rng: &mut R) -> u64 {
        let e = rng.random_range(0.0..=(self.log_total + 1.0).min(63.0));
        (2f64.powf(e) as u64).max(1)
    }

    /// A result size between 1 and `n + 1`.
    pub fn k<R: Rng>(&self, rng: &mut R) -> usize {
        if rng.random_bool(0.5) {
            rng.random_range(1..=self.n.clamp(1, 8))
        } else {
            rng.random_range(1..=self.n + 1)
        }
    }
}

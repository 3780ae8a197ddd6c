//! Finite-alphabet distributions and divergences.
//!
//! Symbols are integer indices 0..K-1; a 1-D [`DataSample`] whose coordinates
//! are such indices plays the role of categorical data, which keeps the exact
//! enumeration harness on the same types as the continuous engine.

use rand::Rng;

use crate::engine::{DataSample, DensityModel};
use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;

/// A probability vector over an alphabet of K >= 2 symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::AlphabetTooSmall(probs.len()));
        }
        for (index, p) in probs.iter().enumerate() {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::InvalidProbability {
                    index,
                    value: *p,
                });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self { probs })
    }

    pub fn uniform(k: usize) -> Result<Self> {
        Self::new(vec![1.0 / k as f64; k])
    }

    /// Empirical distribution counts / n.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return Err(Error::EmptyCounts);
        }
        Self::new(counts.iter().map(|c| *c as f64 / n as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, symbol: usize) -> f64 {
        self.probs[symbol]
    }

    pub fn ln_prob(&self, symbol: usize) -> f64 {
        let p = self.probs[symbol];
        if p > 0.0 {
            p.ln()
        } else {
            f64::NEG_INFINITY
        }
    }

    /// Embed as a 1-D density on integer points, with a categorical sampler.
    pub fn to_density_model(&self, id: impl Into<String>) -> DensityModel {
        let probs = self.probs.clone();
        let sample_probs = probs.clone();
        let k = probs.len();
        DensityModel::new(id, move |x: &[f64]| {
            let v = x[0];
            if v.fract() == 0.0 && v >= 0.0 && v < k as f64 {
                let p = probs[v as usize];
                if p > 0.0 {
                    return p.ln();
                }
            }
            f64::NEG_INFINITY
        })
        .with_sampler(move |rng| {
            let u: f64 = rng.random();
            let mut acc = 0.0;
            for (i, p) in sample_probs.iter().enumerate() {
                acc += p;
                if u < acc {
                    return vec![i as f64];
                }
            }
            vec![(k - 1) as f64]
        })
    }
}

/// Count the occurrences of each alphabet symbol in a 1-D sample.
pub fn empirical_counts(sample: &DataSample, alphabet: usize) -> Result<Vec<u64>> {
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    if sample.dim() != 1 {
        return Err(Error::DimensionMismatch {
            position: 0,
            expected: 1,
            found: sample.dim(),
        });
    }
    let mut counts = vec![0u64; alphabet];
    for (position, p) in sample.points().iter().enumerate() {
        let value = p[0];
        let in_range = value.fract() == 0.0 && value >= 0.0 && value < alphabet as f64;
        if !in_range {
            return Err(Error::SymbolOutOfRange {
                position,
                value,
                alphabet,
            });
        }
        counts[value as usize] += 1;
    }
    Ok(counts)
}

/// KL divergence sum p ln(p/q) in nats, with 0 ln 0 = 0 and +inf whenever q
/// has a hole where p has mass.
pub fn kl_discrete(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::AlphabetMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut acc = 0.0;
    for (pk, qk) in p.probs().iter().zip(q.probs()) {
        if *pk == 0.0 {
            continue;
        }
        if *qk == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += pk * (pk / qk).ln();
    }
    // rounding can leave a tiny negative residue when p ~ q
    Ok(acc.max(0.0))
}

/// KL divergence from the empirical distribution of `counts` to `model`.
pub fn kl_empirical_discrete(counts: &[u64], model: &DiscreteDistribution) -> Result<f64> {
    let empirical = DiscreteDistribution::from_counts(counts)?;
    kl_discrete(&empirical, model)
}

/// Boltzmann-weighted average of the divergences D[emp, P] over the set, at
/// inverse temperature `beta`. `beta = 0` is the plain average.
pub fn gibbs_average_divergence(
    models: &[DiscreteDistribution],
    counts: &[u64],
    beta: f64,
) -> Result<f64> {
    if models.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidBeta(beta));
    }
    let divergences: Vec<f64> = models
        .iter()
        .map(|m| kl_empirical_discrete(counts, m))
        .collect::<Result<_>>()?;
    let raw: Vec<f64> = divergences
        .iter()
        .map(|d| if beta == 0.0 { 0.0 } else { -beta * d })
        .collect();
    let norm = log_sum_exp(&raw);
    if norm == f64::NEG_INFINITY {
        return Err(Error::EmptySupport);
    }
    let mut acc = 0.0;
    for (d, lw) in divergences.iter().zip(&raw) {
        let w = (lw - norm).exp();
        if w > 0.0 {
            acc += w * d;
        }
    }
    Ok(acc)
}

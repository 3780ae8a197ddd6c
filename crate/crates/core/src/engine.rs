//! Samples, candidate densities, and likelihood-tempered model weights.
//!
//! The estimator assembled here is a mixture over a finite (or gridded)
//! candidate set whose log-weights are `beta * mean-log-likelihood`,
//! normalized with log-sum-exp. At `beta = n` the weights reduce to
//! normalized likelihood products, which makes the mixture the posterior
//! predictive under a uniform prior over the set; every verification
//! harness in this workspace targets that matched temperature.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp, normal_ln_pdf};

/// One observation; dimension is fixed per sample, everyday use is 1-D.
pub type Point = Vec<f64>;

pub type LogDensityFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
pub type SamplerFn = dyn Fn(&mut dyn RngCore) -> Point + Send + Sync;

/// The reproducible RNG used throughout; all randomness flows from explicit seeds.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An ordered i.i.d. sample with at least one point and a consistent dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSample {
    points: Vec<Point>,
    dim: usize,
}

impl DataSample {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySample);
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                position: 0,
                expected: 1,
                found: 0,
            });
        }
        for (position, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    position,
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        Ok(Self { points, dim })
    }

    /// 1-D convenience constructor.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|v| vec![*v]).collect())
    }

    /// Sample size n.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The coordinates of a 1-D sample.
    pub fn scalars(&self) -> Result<Vec<f64>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                position: 0,
                expected: 1,
                found: self.dim,
            });
        }
        Ok(self.points.iter().map(|p| p[0]).collect())
    }
}

/// A named candidate density: a log-density evaluator plus an optional sampler.
///
/// Log-densities are in nats; a return of -inf means zero density at that
/// point. Evaluators must never return +inf.
#[derive(Clone)]
pub struct DensityModel {
    id: String,
    log_density: Arc<LogDensityFn>,
    sampler: Option<Arc<SamplerFn>>,
}

impl fmt::Debug for DensityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityModel")
            .field("id", &self.id)
            .field("has_sampler", &self.sampler.is_some())
            .finish()
    }
}

impl DensityModel {
    pub fn new(
        id: impl Into<String>,
        log_density: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            log_density: Arc::new(log_density),
            sampler: None,
        }
    }

    pub fn with_sampler(
        mut self,
        sampler: impl Fn(&mut dyn RngCore) -> Point + Send + Sync + 'static,
    ) -> Self {
        self.sampler = Some(Arc::new(sampler));
        self
    }

    /// 1-D normal with the given mean and standard deviation, sampler included.
    pub fn gaussian(id: impl Into<String>, mean: f64, sigma: f64) -> Self {
        assert!(
            sigma.is_finite() && sigma > 0.0,
            "sigma must be finite and positive"
        );
        let normal = rand_distr::Normal::new(mean, sigma).expect("valid normal parameters");
        Self::new(id, move |x: &[f64]| normal_ln_pdf(x[0], mean, sigma))
            .with_sampler(move |rng| vec![normal.sample(rng)])
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn log_density(&self, x: &[f64]) -> f64 {
        (self.log_density)(x)
    }

    pub fn density(&self, x: &[f64]) -> f64 {
        self.log_density(x).exp()
    }

    pub fn has_sampler(&self) -> bool {
        self.sampler.is_some()
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> Result<Point> {
        match &self.sampler {
            Some(s) => Ok(s(rng)),
            None => Err(Error::MissingSampler(self.id.clone())),
        }
    }
}

/// A finite collection of candidate models, or a parameter-grid discretization
/// of a continuum family with per-node quadrature weights.
#[derive(Debug, Clone)]
pub enum ModelSet {
    Finite(Vec<DensityModel>),
    Grid {
        models: Vec<DensityModel>,
        quad_weights: Vec<f64>,
    },
}

impl ModelSet {
    pub fn finite(models: Vec<DensityModel>) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::EmptyModelSet);
        }
        Self::check_unique_ids(&models)?;
        Ok(ModelSet::Finite(models))
    }

    pub fn grid(models: Vec<DensityModel>, quad_weights: Vec<f64>) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::EmptyModelSet);
        }
        if models.len() != quad_weights.len() {
            return Err(Error::LengthMismatch {
                context: "grid model set",
                left: models.len(),
                right: quad_weights.len(),
            });
        }
        for (index, w) in quad_weights.iter().enumerate() {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidQuadWeight { index, value: *w });
            }
        }
        Self::check_unique_ids(&models)?;
        Ok(ModelSet::Grid {
            models,
            quad_weights,
        })
    }

    fn check_unique_ids(models: &[DensityModel]) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for m in models {
            if !seen.insert(m.id()) {
                return Err(Error::DuplicateModelId(m.id().to_string()));
            }
        }
        Ok(())
    }

    pub fn models(&self) -> &[DensityModel] {
        match self {
            ModelSet::Finite(models) => models,
            ModelSet::Grid { models, .. } => models,
        }
    }

    pub fn len(&self) -> usize {
        self.models().len()
    }

    pub fn is_empty(&self) -> bool {
        self.models().is_empty()
    }

    /// Cardinality for a finite set, total quadrature weight for a grid.
    pub fn size_measure(&self) -> f64 {
        match self {
            ModelSet::Finite(models) => models.len() as f64,
            ModelSet::Grid { quad_weights, .. } => quad_weights.iter().sum(),
        }
    }

    /// ln of the quadrature weight at a node; 0 for finite sets.
    pub fn ln_quad_weight(&self, index: usize) -> f64 {
        match self {
            ModelSet::Finite(_) => 0.0,
            ModelSet::Grid { quad_weights, .. } => quad_weights[index].ln(),
        }
    }

    /// A new finite set with one extra candidate appended.
    pub fn extended(&self, candidate: DensityModel) -> Result<ModelSet> {
        match self {
            ModelSet::Finite(models) => {
                let mut extended = models.clone();
                extended.push(candidate);
                Self::finite(extended)
            }
            ModelSet::Grid { .. } => Err(Error::FiniteSetRequired("extend")),
        }
    }
}

/// Normalized log-weights over a model set at a given inverse temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct LogWeightVector {
    log_weights: Vec<f64>,
    beta: f64,
}

impl LogWeightVector {
    /// Normalize raw log-weights with log-sum-exp. Entries of -inf are
    /// allowed (dead models get weight zero); NaN or +inf are rejected, and a
    /// vector that is dead everywhere is an estimation failure.
    pub fn from_unnormalized(mut log_weights: Vec<f64>, beta: f64) -> Result<Self> {
        if log_weights.is_empty() {
            return Err(Error::EmptyModelSet);
        }
        for (index, lw) in log_weights.iter().enumerate() {
            if lw.is_nan() || *lw == f64::INFINITY {
                return Err(Error::NonFiniteLogWeight { index });
            }
        }
        let norm = log_sum_exp(&log_weights);
        if norm == f64::NEG_INFINITY {
            return Err(Error::EmptySupport);
        }
        for lw in &mut log_weights {
            *lw -= norm;
        }
        Ok(Self { log_weights, beta })
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn weights(&self) -> Vec<f64> {
        self.log_weights.iter().map(|lw| lw.exp()).collect()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.log_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_weights.is_empty()
    }

    /// Draw a model index with probability equal to its weight.
    /// Deterministic for a fixed RNG state.
    pub fn sample_model_index(&self, rng: &mut dyn RngCore) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut last_alive = 0;
        for (i, lw) in self.log_weights.iter().enumerate() {
            let w = lw.exp();
            if w > 0.0 {
                last_alive = i;
            }
            acc += w;
            if u < acc {
                return i;
            }
        }
        // Rounding can leave acc a hair under 1; fall back to the last live model.
        last_alive
    }
}

/// (1/n) sum of log-densities over the sample; -inf if any point is outside
/// the model's support.
pub fn mean_log_likelihood(model: &DensityModel, sample: &DataSample) -> f64 {
    total_log_likelihood(model, sample) / sample.len() as f64
}

/// Sum of log-densities over the sample, -inf on any dead point.
pub fn total_log_likelihood(model: &DensityModel, sample: &DataSample) -> f64 {
    let mut total = 0.0;
    for p in sample.points() {
        let ld = model.log_density(p);
        if ld == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        total += ld;
    }
    total
}

/// Tempered posterior log-weights over the set: `beta * mean-log-likelihood`
/// plus the node's log quadrature weight, normalized.
///
/// `beta = 0` gives the uniform average over the set regardless of support,
/// matching the zero-temperature-free limit of the weighting.
pub fn posterior_log_weights(
    set: &ModelSet,
    sample: &DataSample,
    beta: f64,
) -> Result<LogWeightVector> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidBeta(beta));
    }
    let raw: Vec<f64> = set
        .models()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let base = if beta == 0.0 {
                0.0
            } else {
                beta * mean_log_likelihood(m, sample)
            };
            base + set.ln_quad_weight(i)
        })
        .collect();
    LogWeightVector::from_unnormalized(raw, beta)
}

/// A weighted average of the candidate densities, evaluable as a density.
#[derive(Debug, Clone)]
pub struct PredictiveMixture {
    set: ModelSet,
    weights: LogWeightVector,
}

impl PredictiveMixture {
    pub fn new(set: ModelSet, weights: LogWeightVector) -> Result<Self> {
        if set.len() != weights.len() {
            return Err(Error::LengthMismatch {
                context: "mixture",
                left: set.len(),
                right: weights.len(),
            });
        }
        Ok(Self { set, weights })
    }

    /// Fit weights on the sample at the given inverse temperature.
    pub fn fit(set: ModelSet, sample: &DataSample, beta: f64) -> Result<Self> {
        let weights = posterior_log_weights(&set, sample, beta)?;
        Self::new(set, weights)
    }

    /// Fit at the matched temperature `beta = n`, the default estimator.
    pub fn nishimori(set: ModelSet, sample: &DataSample) -> Result<Self> {
        let beta = sample.len() as f64;
        Self::fit(set, sample, beta)
    }

    /// Mixture density: sum of weight times component density. Routed through
    /// the log-domain evaluation so that wrapping the mixture via
    /// [`Self::to_density_model`] reproduces it bit for bit.
    pub fn density(&self, x: &[f64]) -> f64 {
        self.log_density(x).exp()
    }

    /// Log of the mixture density, a log-sum-exp over the components.
    pub fn log_density(&self, x: &[f64]) -> f64 {
        let terms: Vec<f64> = self
            .set
            .models()
            .iter()
            .zip(self.weights.log_weights())
            .map(|(m, lw)| lw + m.log_density(x))
            .collect();
        log_sum_exp(&terms)
    }

    pub fn weights(&self) -> &LogWeightVector {
        &self.weights
    }

    pub fn model_set(&self) -> &ModelSet {
        &self.set
    }

    /// Wrap the mixture itself as a candidate density.
    pub fn to_density_model(&self, id: impl Into<String>) -> DensityModel {
        let mix = self.clone();
        DensityModel::new(id, move |x: &[f64]| mix.log_density(x))
    }
}

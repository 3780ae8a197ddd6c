//! Sequential posterior-weight updates over a finite candidate set.
//!
//! One point at a time, the weight of each model is multiplied by its density
//! at the new point and renormalized; n such updates from the uniform prior
//! reproduce the matched-temperature batch weights exactly. Re-sweeping the
//! same data instead squares the likelihood ratios each pass, so repeated
//! sweeps concentrate on the likelihood argmax unless models are tied --
//! [`iterate_updates`] records the trajectory and classifies which of those
//! behaviours occurred rather than asserting a fixed point.

use crate::engine::{
    posterior_log_weights, total_log_likelihood, DataSample, ModelSet,
};
use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;

/// Normalized weights over a finite model set plus an update counter.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPosterior {
    log_weights: Vec<f64>,
    steps: usize,
}

impl ModelPosterior {
    /// Equal weights over a finite set.
    pub fn uniform(set: &ModelSet) -> Result<Self> {
        if matches!(set, ModelSet::Grid { .. }) {
            return Err(Error::FiniteSetRequired("model posterior"));
        }
        let m = set.len() as f64;
        Ok(Self {
            log_weights: vec![-m.ln(); set.len()],
            steps: 0,
        })
    }

    /// A user-supplied prior; weights must be nonnegative with positive total.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyModelSet);
        }
        for (index, w) in weights.iter().enumerate() {
            if !w.is_finite() || *w < 0.0 {
                return Err(Error::InvalidProbability {
                    index,
                    value: *w,
                });
            }
        }
        let raw: Vec<f64> = weights
            .iter()
            .map(|w| if *w > 0.0 { w.ln() } else { f64::NEG_INFINITY })
            .collect();
        Self::normalized(raw, 0)
    }

    fn normalized(mut raw: Vec<f64>, steps: usize) -> Result<Self> {
        let norm = log_sum_exp(&raw);
        if norm == f64::NEG_INFINITY {
            return Err(Error::EmptySupport);
        }
        for lw in &mut raw {
            *lw -= norm;
        }
        Ok(Self {
            log_weights: raw,
            steps,
        })
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn weights(&self) -> Vec<f64> {
        self.log_weights.iter().map(|lw| lw.exp()).collect()
    }

    /// Number of updates applied since construction.
    pub fn steps(&self) -> usize {
        self.steps
    }
}

fn check_alignment(set: &ModelSet, posterior: &ModelPosterior) -> Result<()> {
    if set.len() != posterior.log_weights.len() {
        return Err(Error::LengthMismatch {
            context: "posterior",
            left: set.len(),
            right: posterior.log_weights.len(),
        });
    }
    Ok(())
}

/// Multiply each weight by the model's density at the new point, renormalize.
pub fn single_point_update(
    set: &ModelSet,
    posterior: &ModelPosterior,
    point: &[f64],
) -> Result<ModelPosterior> {
    check_alignment(set, posterior)?;
    let raw: Vec<f64> = set
        .models()
        .iter()
        .zip(&posterior.log_weights)
        .map(|(m, lw)| lw + m.log_density(point))
        .collect();
    ModelPosterior::normalized(raw, posterior.steps + 1)
}

/// One multiplicative pass of the whole sample, renormalized.
pub fn full_data_sweep_update(
    set: &ModelSet,
    posterior: &ModelPosterior,
    sample: &DataSample,
) -> Result<ModelPosterior> {
    check_alignment(set, posterior)?;
    let raw: Vec<f64> = set
        .models()
        .iter()
        .zip(&posterior.log_weights)
        .map(|(m, lw)| lw + total_log_likelihood(m, sample))
        .collect();
    ModelPosterior::normalized(raw, posterior.steps + 1)
}

/// Run n single-point updates from the uniform prior and compare against the
/// matched-temperature batch weights; returns the max absolute weight gap.
pub fn batch_equivalence_check(set: &ModelSet, sample: &DataSample) -> Result<f64> {
    let mut sequential = ModelPosterior::uniform(set)?;
    for point in sample.points() {
        sequential = single_point_update(set, &sequential, point)?;
    }
    let batch = posterior_log_weights(set, sample, sample.len() as f64)?;
    let gap = sequential
        .weights()
        .iter()
        .zip(batch.weights())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    Ok(gap)
}

/// How a repeated-sweep trajectory ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOutcome {
    /// The weights stopped moving at the batch (single-sweep) weights, which
    /// happens exactly when all surviving models are tied in likelihood.
    ConvergedToBatchWeights,
    /// Mass accumulated on the likelihood argmax beyond the threshold.
    Concentrated { model_index: usize },
    /// The weights stopped moving somewhere else (e.g. a point-mass prior).
    Stationary,
    MaxSweepsReached,
}

/// Weight vectors per sweep plus the classification of the end state.
#[derive(Debug, Clone)]
pub struct SweepTrajectory {
    pub states: Vec<ModelPosterior>,
    pub outcome: SweepOutcome,
}

/// Repeatedly sweep the full sample, recording the posterior after every
/// sweep. Stops when mass 1 - `concentration_threshold` sits on one model,
/// when the weights stop moving, or after `max_sweeps` passes.
pub fn iterate_updates(
    set: &ModelSet,
    prior: &ModelPosterior,
    sample: &DataSample,
    max_sweeps: usize,
    concentration_threshold: f64,
) -> Result<SweepTrajectory> {
    if max_sweeps == 0 {
        return Err(Error::InvalidIterationCount);
    }
    check_alignment(set, prior)?;
    let batch = posterior_log_weights(set, sample, sample.len() as f64)?;
    let batch_weights = batch.weights();

    let mut states = vec![prior.clone()];
    let mut outcome = SweepOutcome::MaxSweepsReached;
    for _ in 0..max_sweeps {
        let next = full_data_sweep_update(set, states.last().unwrap(), sample)?;
        let weights = next.weights();
        let previous = states.last().unwrap().weights();
        states.push(next);

        let (argmax, max_weight) = weights
            .iter()
            .enumerate()
            .fold((0, 0.0), |acc, (i, w)| if *w > acc.1 { (i, *w) } else { acc });
        if max_weight >= 1.0 - concentration_threshold {
            outcome = SweepOutcome::Concentrated {
                model_index: argmax,
            };
            break;
        }
        let moved = weights
            .iter()
            .zip(&previous)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if moved < 1e-14 {
            let near_batch = weights
                .iter()
                .zip(&batch_weights)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max)
                < 1e-12;
            outcome = if near_batch {
                SweepOutcome::ConvergedToBatchWeights
            } else {
                SweepOutcome::Stationary
            };
            break;
        }
    }
    Ok(SweepTrajectory { states, outcome })
}

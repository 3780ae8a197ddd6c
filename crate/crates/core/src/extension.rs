//! Growing the candidate set by one model.
//!
//! Adding a candidate P* to a finite set shifts the matched-temperature
//! mixture by (P* - mix) * r / (1 + r), where r is the candidate's likelihood
//! mass relative to the set's. The first-order formula drops the 1/(1 + r)
//! and is therefore accurate to O(r^2); candidate scoring estimates how much
//! a candidate would lower the expected divergence to a reference truth.

use crate::engine::{
    total_log_likelihood, DataSample, DensityModel, ModelSet, PredictiveMixture,
};
use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;

/// Above this ratio the first-order expansion is no longer trustworthy and
/// callers should fall back to exact recomputation.
pub const EXPANSION_RATIO_LIMIT: f64 = 0.1;

/// z*/Z: the candidate's likelihood product over the sample relative to the
/// summed likelihood products of the finite set. Computed in the log domain;
/// zero when the candidate is dead on any sample point.
pub fn extension_ratio(
    set: &ModelSet,
    sample: &DataSample,
    candidate: &DensityModel,
) -> Result<f64> {
    if matches!(set, ModelSet::Grid { .. }) {
        return Err(Error::FiniteSetRequired("extension_ratio"));
    }
    let totals: Vec<f64> = set
        .models()
        .iter()
        .map(|m| total_log_likelihood(m, sample))
        .collect();
    let ln_z = log_sum_exp(&totals);
    if ln_z == f64::NEG_INFINITY {
        return Err(Error::EmptySupport);
    }
    let ln_candidate = total_log_likelihood(candidate, sample);
    if ln_candidate == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok((ln_candidate - ln_z).exp())
}

/// First-order extended mixture: mix + (candidate - mix) * ratio.
///
/// Valid for small ratios; stays normalized term by term but differs from the
/// exact recomputation by (candidate - mix) * ratio^2 / (1 + ratio).
pub fn first_order_extended_predictive(
    mix: &PredictiveMixture,
    candidate: &DensityModel,
    ratio: f64,
    x: &[f64],
) -> f64 {
    let base = mix.density(x);
    base + (candidate.density(x) - base) * ratio
}

/// The matched-temperature mixture refitted on the set plus the candidate.
pub fn extended_mixture(
    set: &ModelSet,
    candidate: &DensityModel,
    sample: &DataSample,
) -> Result<PredictiveMixture> {
    let extended = set.extended(candidate.clone())?;
    PredictiveMixture::nishimori(extended, sample)
}

/// Exact density of the extended mixture at one point. Refits per call; use
/// [`extended_mixture`] when evaluating a whole curve.
pub fn exact_extended_predictive(
    set: &ModelSet,
    candidate: &DensityModel,
    sample: &DataSample,
    x: &[f64],
) -> Result<f64> {
    Ok(extended_mixture(set, candidate, sample)?.density(x))
}

/// First-order and exact extended curves on a grid, with their sup distance.
#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub candidate_id: String,
    pub ratio: f64,
    /// False when the ratio exceeds [`EXPANSION_RATIO_LIMIT`].
    pub within_expansion_regime: bool,
    pub xs: Vec<f64>,
    pub first_order: Vec<f64>,
    pub exact: Vec<f64>,
    pub sup_error: f64,
}

pub fn extension_report(
    set: &ModelSet,
    sample: &DataSample,
    candidate: &DensityModel,
    xs: &[f64],
) -> Result<ExtensionReport> {
    let ratio = extension_ratio(set, sample, candidate)?;
    let base = PredictiveMixture::nishimori(set.clone(), sample)?;
    let exact_mix = extended_mixture(set, candidate, sample)?;
    let mut first_order = Vec::with_capacity(xs.len());
    let mut exact = Vec::with_capacity(xs.len());
    let mut sup_error = 0.0f64;
    for &x in xs {
        let fo = first_order_extended_predictive(&base, candidate, ratio, &[x]);
        let ex = exact_mix.density(&[x]);
        sup_error = sup_error.max((fo - ex).abs());
        first_order.push(fo);
        exact.push(ex);
    }
    Ok(ExtensionReport {
        candidate_id: candidate.id().to_string(),
        ratio,
        within_expansion_regime: ratio <= EXPANSION_RATIO_LIMIT,
        xs: xs.to_vec(),
        first_order,
        exact,
        sup_error,
    })
}

/// What stands in for the unknown truth when scoring a candidate.
#[derive(Debug, Clone, Copy)]
pub enum ScoreReference<'a> {
    /// A known synthetic truth with a sampler; the score integrates against
    /// `draws` seeded samples from it.
    SyntheticGt {
        gt: &'a DensityModel,
        draws: usize,
        seed: u64,
    },
    /// Held-out data points standing in for truth samples.
    HeldOut(&'a DataSample),
}

/// Estimated first-order reduction of the expected divergence when the
/// candidate is added: mean over truth samples of (P*(x) - mix(x)) / mix(x),
/// times the extension ratio. Higher is better; a candidate identical to the
/// current mixture scores exactly zero.
pub fn candidate_score(
    set: &ModelSet,
    sample: &DataSample,
    candidate: &DensityModel,
    reference: &ScoreReference<'_>,
) -> Result<f64> {
    let ratio = extension_ratio(set, sample, candidate)?;
    let mix = PredictiveMixture::nishimori(set.clone(), sample)?;
    let integrand = |x: &[f64]| {
        let base = mix.density(x);
        (candidate.density(x) - base) / base
    };
    let mean = match reference {
        ScoreReference::HeldOut(held_out) => {
            let total: f64 = held_out.points().iter().map(|p| integrand(p)).sum();
            total / held_out.len() as f64
        }
        ScoreReference::SyntheticGt { gt, draws, seed } => {
            let mut rng = crate::engine::seeded_rng(*seed);
            let mut total = 0.0;
            for _ in 0..*draws {
                let x = gt.sample(&mut rng)?;
                total += integrand(&x);
            }
            total / *draws as f64
        }
    };
    Ok(mean * ratio)
}

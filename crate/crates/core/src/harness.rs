//! Exact finite-alphabet verification of the matched-temperature identities,
//! plus a seeded Monte Carlo harness for continuous model sets.
//!
//! Data averages run over count vectors with multinomial multiplicities
//! instead of ordered sequences; tests pin the equivalence of the two
//! enumerations. The two exact statements checked here are
//!
//! * the internal-energy identity: with the ground truth averaged uniformly
//!   over the set and the weights at `beta = n`, the data-and-Gibbs-averaged
//!   divergence equals the per-model self-averaged divergence, and
//! * optimality of the matched temperature: the set-averaged expected
//!   divergence from truth to the mixture is minimized at `beta = n`.
//!
//! Both are algebraic consequences of swapping the model and ground-truth
//! sums at the matched temperature, so the tests demand near machine
//! precision rather than statistical agreement.

use rand::RngCore;

use crate::discrete::{kl_discrete, kl_empirical_discrete, DiscreteDistribution};
use crate::engine::{seeded_rng, DataSample, DensityModel, ModelSet, Point, PredictiveMixture};
use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;

/// Hard cap on the number of count vectors an enumeration may produce.
pub const ENUMERATION_GUARD: u128 = 1_000_000;

/// One composition of n into K counts, with its multinomial multiplicity.
/// The exact integer multiplicity is kept while it fits comfortably
/// (n <= 20); the log multiplicity is always available.
#[derive(Debug, Clone)]
pub struct CountVectorEntry {
    pub counts: Vec<u64>,
    pub multiplicity: Option<u128>,
    pub ln_multiplicity: f64,
}

/// Every way n i.i.d. draws from a K-symbol alphabet can land, as counts.
#[derive(Debug, Clone)]
pub struct CountVectorEnumeration {
    pub alphabet_size: usize,
    pub sample_size: usize,
    pub entries: Vec<CountVectorEntry>,
}

fn binomial_u128(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

fn ln_factorial(m: u64) -> f64 {
    statrs::function::gamma::ln_gamma(m as f64 + 1.0)
}

fn multinomial_multiplicity(counts: &[u64]) -> (Option<u128>, f64) {
    let n: u64 = counts.iter().sum();
    if n <= 20 {
        let mut exact: u128 = 1;
        let mut remaining = n as u128;
        for &c in counts {
            exact *= binomial_u128(remaining, c as u128).expect("small multinomial fits in u128");
            remaining -= c as u128;
        }
        (Some(exact), (exact as f64).ln())
    } else {
        let ln = ln_factorial(n) - counts.iter().map(|&c| ln_factorial(c)).sum::<f64>();
        (None, ln)
    }
}

/// Enumerate all count vectors of n draws over K symbols, in lexicographic
/// order, guarded by [`ENUMERATION_GUARD`] on C(n + K - 1, K - 1).
pub fn enumerate_count_vectors(
    alphabet_size: usize,
    sample_size: usize,
) -> Result<CountVectorEnumeration> {
    if alphabet_size < 2 {
        return Err(Error::AlphabetTooSmall(alphabet_size));
    }
    if sample_size == 0 {
        return Err(Error::EmptySample);
    }
    let combinations = binomial_u128(
        (sample_size + alphabet_size - 1) as u128,
        (alphabet_size - 1) as u128,
    )
    .unwrap_or(u128::MAX);
    if combinations > ENUMERATION_GUARD {
        return Err(Error::EnumerationTooLarge {
            combinations,
            limit: ENUMERATION_GUARD,
        });
    }

    let mut entries = Vec::with_capacity(combinations as usize);
    let mut counts = vec![0u64; alphabet_size];
    fill_compositions(sample_size as u64, 0, &mut counts, &mut entries);
    Ok(CountVectorEnumeration {
        alphabet_size,
        sample_size,
        entries,
    })
}

fn fill_compositions(
    remaining: u64,
    position: usize,
    counts: &mut Vec<u64>,
    entries: &mut Vec<CountVectorEntry>,
) {
    if position == counts.len() - 1 {
        counts[position] = remaining;
        let (multiplicity, ln_multiplicity) = multinomial_multiplicity(counts);
        entries.push(CountVectorEntry {
            counts: counts.clone(),
            multiplicity,
            ln_multiplicity,
        });
        return;
    }
    for c in 0..=remaining {
        counts[position] = c;
        fill_compositions(remaining - c, position + 1, counts, entries);
    }
    counts[position] = 0;
}

/// ln Pr(counts) under i.i.d. draws from `gt`: ln multiplicity plus
/// sum_k c_k ln gt_k. Returns -inf when gt has no mass on an observed symbol.
fn ln_count_probability(entry: &CountVectorEntry, gt: &DiscreteDistribution) -> f64 {
    let mut ln = entry.ln_multiplicity;
    for (k, &c) in entry.counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let lp = gt.ln_prob(k);
        if lp == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        ln += c as f64 * lp;
    }
    ln
}

/// The tempered mixture over discrete models given observed counts:
/// weights proportional to exp(beta * mean log-likelihood), then the
/// weighted average of the probability vectors.
pub fn discrete_mixture(
    models: &[DiscreteDistribution],
    counts: &[u64],
    beta: f64,
) -> Result<DiscreteDistribution> {
    if models.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidBeta(beta));
    }
    let k = counts.len();
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return Err(Error::EmptyCounts);
    }
    for m in models {
        if m.len() != k {
            return Err(Error::AlphabetMismatch {
                left: m.len(),
                right: k,
            });
        }
    }
    let raw: Vec<f64> = models
        .iter()
        .map(|m| {
            if beta == 0.0 {
                return 0.0;
            }
            let mut mean_ll = 0.0;
            for (sym, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let lp = m.ln_prob(sym);
                if lp == f64::NEG_INFINITY {
                    return f64::NEG_INFINITY;
                }
                mean_ll += c as f64 / n as f64 * lp;
            }
            beta * mean_ll
        })
        .collect();
    let norm = log_sum_exp(&raw);
    if norm == f64::NEG_INFINITY {
        return Err(Error::EmptySupport);
    }
    let mut probs = vec![0.0; k];
    for (m, lw) in models.iter().zip(&raw) {
        let w = (lw - norm).exp();
        if w == 0.0 {
            continue;
        }
        for (sym, p) in m.probs().iter().enumerate() {
            probs[sym] += w * p;
        }
    }
    DiscreteDistribution::new(probs)
}

/// Exact expectation over all datasets of the divergence from `gt` to the
/// tempered mixture: sum over count vectors of Pr_gt(counts) * D[gt, mix].
pub fn exact_expected_predictive_kl(
    models: &[DiscreteDistribution],
    gt: &DiscreteDistribution,
    sample_size: usize,
    beta: f64,
) -> Result<f64> {
    let enumeration = enumerate_count_vectors(gt.len(), sample_size)?;
    expected_kl_over_enumeration(&enumeration, models, gt, beta)
}

fn expected_kl_over_enumeration(
    enumeration: &CountVectorEnumeration,
    models: &[DiscreteDistribution],
    gt: &DiscreteDistribution,
    beta: f64,
) -> Result<f64> {
    let mut acc = 0.0;
    for entry in &enumeration.entries {
        let ln_pr = ln_count_probability(entry, gt);
        if ln_pr == f64::NEG_INFINITY {
            continue;
        }
        let mix = discrete_mixture(models, &entry.counts, beta)?;
        let kl = kl_discrete(gt, &mix)?;
        acc += ln_pr.exp() * kl;
    }
    Ok(acc)
}

/// Expected divergence as a function of beta, with the ground truth averaged
/// uniformly over the model set.
#[derive(Debug, Clone)]
pub struct BetaSweepResult {
    pub betas: Vec<f64>,
    pub expected_kl: Vec<f64>,
    pub argmin_beta: f64,
}

impl BetaSweepResult {
    pub fn argmin_index(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.expected_kl.iter().enumerate() {
            if *v < self.expected_kl[best] {
                best = i;
            }
        }
        best
    }
}

/// Sweep beta over the grid, averaging `exact_expected_predictive_kl`
/// uniformly over ground truths drawn from the set itself. The grid must
/// contain the sample size, where the minimum is expected.
pub fn beta_sweep_model_averaged(
    models: &[DiscreteDistribution],
    sample_size: usize,
    betas: &[f64],
) -> Result<BetaSweepResult> {
    if models.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    let n = sample_size as f64;
    if !betas.contains(&n) {
        return Err(Error::BetaGridMissingSampleSize(n));
    }
    let enumeration = enumerate_count_vectors(models[0].len(), sample_size)?;
    let m = models.len() as f64;
    let mut expected_kl = Vec::with_capacity(betas.len());
    for &beta in betas {
        let mut acc = 0.0;
        for gt in models {
            acc += expected_kl_over_enumeration(&enumeration, models, gt, beta)?;
        }
        expected_kl.push(acc / m);
    }
    let mut result = BetaSweepResult {
        betas: betas.to_vec(),
        expected_kl,
        argmin_beta: 0.0,
    };
    result.argmin_beta = result.betas[result.argmin_index()];
    Ok(result)
}

/// Both sides of the internal-energy identity at the matched temperature.
#[derive(Debug, Clone, Copy)]
pub struct IdentityReport {
    /// Data-averaged Gibbs mean of D[emp, .], ground truth uniform on the set.
    pub lhs: f64,
    /// Per-model self-average of D[emp, model] under that model's own draws.
    pub rhs: f64,
    pub gap: f64,
}

/// Evaluate the identity by exact enumeration. All models must be strictly
/// positive on the alphabet so every divergence stays finite.
pub fn internal_energy_identity_check(
    models: &[DiscreteDistribution],
    sample_size: usize,
) -> Result<IdentityReport> {
    if models.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    let k = models[0].len();
    for (index, m) in models.iter().enumerate() {
        if m.len() != k {
            return Err(Error::AlphabetMismatch {
                left: m.len(),
                right: k,
            });
        }
        if m.probs().iter().any(|p| *p <= 0.0) {
            return Err(Error::NonPositiveModel(index));
        }
    }
    let enumeration = enumerate_count_vectors(k, sample_size)?;
    let beta = sample_size as f64;
    let m = models.len() as f64;

    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for entry in &enumeration.entries {
        let divergences: Vec<f64> = models
            .iter()
            .map(|model| kl_empirical_discrete(&entry.counts, model))
            .collect::<Result<_>>()?;
        let raw: Vec<f64> = divergences.iter().map(|d| -beta * d).collect();
        let norm = log_sum_exp(&raw);
        let gibbs: f64 = divergences
            .iter()
            .zip(&raw)
            .map(|(d, lw)| (lw - norm).exp() * d)
            .sum();
        for (j, gt) in models.iter().enumerate() {
            let pr = ln_count_probability(entry, gt).exp();
            lhs += pr * gibbs;
            rhs += pr * divergences[j];
        }
    }
    lhs /= m;
    rhs /= m;
    Ok(IdentityReport {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

/// Monte Carlo estimate of the expected divergence from a continuous ground
/// truth to the tempered mixture, with its standard error over replicates.
#[derive(Debug, Clone, Copy)]
pub struct McKlEstimate {
    pub estimate: f64,
    pub std_error: f64,
    /// Replicates dropped because a log-density term was non-finite or the
    /// whole set was dead on the generated data.
    pub failed_replicates: usize,
}

/// Replicated Monte Carlo: draw `sample_size` points from `gt`, fit the
/// mixture at `beta`, and estimate D[gt, mix] from `eval_draws` fresh gt
/// draws; average over `replicates` datasets. Deterministic for a fixed seed.
#[allow(clippy::too_many_arguments)]
pub fn mc_expected_predictive_kl(
    set: &ModelSet,
    gt: &DensityModel,
    sample_size: usize,
    beta: f64,
    replicates: usize,
    eval_draws: usize,
    seed: u64,
) -> Result<McKlEstimate> {
    if !gt.has_sampler() {
        return Err(Error::MissingSampler(gt.id().to_string()));
    }
    if replicates < 100 {
        return Err(Error::TooFewReplicates {
            got: replicates,
            min: 100,
        });
    }
    if sample_size == 0 {
        return Err(Error::EmptySample);
    }
    if eval_draws == 0 {
        return Err(Error::InvalidDrawCount);
    }
    let mut master = seeded_rng(seed);
    let replicate_seeds: Vec<u64> = (0..replicates).map(|_| master.next_u64()).collect();

    let mut estimates = Vec::with_capacity(replicates);
    let mut failed = 0usize;
    for replicate_seed in replicate_seeds {
        let mut rng = seeded_rng(replicate_seed);
        let points: Vec<Point> = (0..sample_size)
            .map(|_| gt.sample(&mut rng))
            .collect::<Result<_>>()?;
        let sample = DataSample::new(points)?;
        let mix = match PredictiveMixture::fit(set.clone(), &sample, beta) {
            Ok(mix) => mix,
            Err(Error::EmptySupport) => {
                failed += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut acc = 0.0;
        let mut alive = true;
        for _ in 0..eval_draws {
            let x = gt.sample(&mut rng)?;
            let term = gt.log_density(&x) - mix.log_density(&x);
            if !term.is_finite() {
                alive = false;
                break;
            }
            acc += term;
        }
        if alive {
            estimates.push(acc / eval_draws as f64);
        } else {
            failed += 1;
        }
    }
    if estimates.is_empty() {
        return Err(Error::AllReplicatesFailed(failed));
    }
    let r = estimates.len() as f64;
    let estimate = estimates.iter().sum::<f64>() / r;
    let std_error = if estimates.len() > 1 {
        let var = estimates
            .iter()
            .map(|e| (e - estimate) * (e - estimate))
            .sum::<f64>()
            / (r - 1.0);
        (var / r).sqrt()
    } else {
        0.0
    };
    Ok(McKlEstimate {
        estimate,
        std_error,
        failed_replicates: failed,
    })
}

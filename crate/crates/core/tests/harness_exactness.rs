//! Exact-enumeration checks at randomized desk-scale instances, the
//! ordered-sequence oracle for the count-vector fast path, and Monte Carlo
//! agreement with the exact values.

use gibbsmix::discrete::DiscreteDistribution;
use gibbsmix::engine::{seeded_rng, ModelSet};
use gibbsmix::harness::{
    beta_sweep_model_averaged, exact_expected_predictive_kl, internal_energy_identity_check,
    mc_expected_predictive_kl,
};
use rand::Rng;

fn random_positive_distribution(rng: &mut impl Rng, k: usize) -> DiscreteDistribution {
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = raw.iter().sum();
    DiscreteDistribution::new(raw.iter().map(|v| v / total).collect()).unwrap()
}

fn random_instance(rng: &mut impl Rng) -> (Vec<DiscreteDistribution>, usize) {
    let k = rng.random_range(2..=4usize);
    let n = rng.random_range(2..=8usize);
    let m = rng.random_range(1..=6usize);
    let models = (0..m).map(|_| random_positive_distribution(rng, k)).collect();
    (models, n)
}

#[test]
fn identity_gap_stays_at_machine_precision_on_random_instances() {
    let mut rng = seeded_rng(0x5eed);
    for trial in 0..25 {
        let (models, n) = random_instance(&mut rng);
        let report = internal_energy_identity_check(&models, n).unwrap();
        assert!(
            report.gap < 1e-12,
            "trial {trial}: gap = {} (lhs {}, rhs {})",
            report.gap,
            report.lhs,
            report.rhs
        );
    }
}

#[test]
fn matched_temperature_is_the_sweep_minimum_on_random_instances() {
    let mut rng = seeded_rng(0xbeef);
    for trial in 0..12 {
        let (models, n) = random_instance(&mut rng);
        let nf = n as f64;
        let betas: Vec<f64> = (0..21)
            .map(|j| {
                if j == 10 {
                    nf
                } else {
                    nf * 4f64.powf((j as f64 - 10.0) / 10.0)
                }
            })
            .collect();
        let sweep = beta_sweep_model_averaged(&models, n, &betas).unwrap();
        let at_n = sweep.expected_kl[10];
        for (j, value) in sweep.expected_kl.iter().enumerate() {
            assert!(
                at_n <= value + 1e-12,
                "trial {trial}: beta {} beats n = {n} ({} < {at_n})",
                betas[j],
                value
            );
        }
    }
}

#[test]
fn count_vector_path_equals_ordered_brute_force() {
    // K = 2: every ordered sequence of length n, for several model pairs.
    let mut rng = seeded_rng(0xcafe);
    for n in 2..=6usize {
        let models = vec![
            random_positive_distribution(&mut rng, 2),
            random_positive_distribution(&mut rng, 2),
            random_positive_distribution(&mut rng, 2),
        ];
        let gt = random_positive_distribution(&mut rng, 2);
        for beta in [0.7, n as f64, 3.0 * n as f64] {
            let mut ordered = 0.0;
            for mask in 0..(1u32 << n) {
                let mut counts = [0u64; 2];
                let mut pr = 1.0;
                for bit in 0..n {
                    let sym = ((mask >> bit) & 1) as usize;
                    counts[sym] += 1;
                    pr *= gt.prob(sym);
                }
                let mix = gibbsmix::harness::discrete_mixture(&models, &counts, beta).unwrap();
                ordered += pr * gibbsmix::discrete::kl_discrete(&gt, &mix).unwrap();
            }
            let fast = exact_expected_predictive_kl(&models, &gt, n, beta).unwrap();
            assert!(
                (fast - ordered).abs() < 1e-13,
                "n = {n}, beta = {beta}: {fast} vs {ordered}"
            );
        }
    }
}

#[test]
fn mc_estimate_is_unbiased_against_exact_enumeration() {
    // discrete models embedded as 1-D densities on integer points
    let p = DiscreteDistribution::new(vec![0.25, 0.45, 0.3]).unwrap();
    let q = DiscreteDistribution::new(vec![0.5, 0.3, 0.2]).unwrap();
    let gt = DiscreteDistribution::new(vec![0.35, 0.4, 0.25]).unwrap();
    let n = 5usize;
    let beta = n as f64;

    let exact = exact_expected_predictive_kl(&[p.clone(), q.clone()], &gt, n, beta).unwrap();

    let set = ModelSet::finite(vec![p.to_density_model("p"), q.to_density_model("q")]).unwrap();
    let gt_model = gt.to_density_model("gt");
    let mc =
        mc_expected_predictive_kl(&set, &gt_model, n, beta, 400, 4_000, 0x90210).unwrap();
    assert_eq!(mc.failed_replicates, 0);
    assert!(
        (mc.estimate - exact).abs() <= 3.0 * mc.std_error,
        "exact = {exact}, mc = {} +- {}",
        mc.estimate,
        mc.std_error
    );
}

#[test]
fn mc_two_gaussian_sweep_prefers_the_matched_temperature() {
    // truth equal to one of the two components; among beta in {1, n, 10 n}
    // the matched temperature wins within Monte Carlo resolution.
    let cfg = gibbsmix::gaussian::TwoGaussianConfig::new(1.0).unwrap();
    let set = cfg.model_set();
    let gt = gibbsmix::engine::DensityModel::gaussian("gt", 1.0, 1.0);
    let n = 10usize;
    let mut results = Vec::new();
    for beta in [1.0, 10.0, 100.0] {
        let mc = mc_expected_predictive_kl(&set, &gt, n, beta, 500, 10_000, 0xabcd).unwrap();
        results.push(mc);
    }
    let matched = &results[1];
    for (i, other) in results.iter().enumerate() {
        if i == 1 {
            continue;
        }
        let slack = 3.0 * matched.std_error.hypot(other.std_error);
        assert!(
            matched.estimate <= other.estimate + slack,
            "beta grid index {i}: {} vs matched {} (slack {slack})",
            other.estimate,
            matched.estimate
        );
    }
}

//! Command implementations. Each returns a [`ResultRecord`] plus an exit code
//! and any warnings; the binary renders the record and forwards the code.

use gibbsmix::bayes::{batch_equivalence_check, single_point_update, ModelPosterior};
use gibbsmix::discrete::DiscreteDistribution;
use gibbsmix::engine::{seeded_rng, DataSample, DensityModel, ModelSet, PredictiveMixture};
use gibbsmix::extension::{
    candidate_score, extension_ratio, ScoreReference, EXPANSION_RATIO_LIMIT,
};
use gibbsmix::gaussian::{
    gaussian_grid, sample_stats, two_gaussian_predictive, GridBox, NormalFamilyPosterior,
    SampleStats, TwoGaussianConfig,
};
use gibbsmix::harness::{beta_sweep_model_averaged, internal_energy_identity_check,
    mc_expected_predictive_kl};
use gibbsmix::numeric::normal_ln_pdf;

use crate::config::{
    BetaSpec, DiscreteSpec, GaussianSpec, GeneratorSpec, ModelsSpec, RunConfig, SampleSource,
    ScoreMode,
};
use crate::output::{fmt_num, ResultRecord};
use crate::CliError;

pub struct CommandOutput {
    pub record: ResultRecord,
    pub exit_code: i32,
    pub warnings: Vec<String>,
}

impl CommandOutput {
    fn ok(record: ResultRecord) -> Self {
        Self {
            record,
            exit_code: 0,
            warnings: Vec::new(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn echo_config(record: &mut ResultRecord, config: &RunConfig, seed: Option<u64>) {
    if let Some(seed) = seed {
        record.meta("seed", seed.to_string());
    }
    for line in config.serialize().lines() {
        if !line.is_empty() {
            record.meta("cfg", line);
        }
    }
}

fn generator_model(spec: &GeneratorSpec, id: &str) -> Result<DensityModel, CliError> {
    match spec {
        GeneratorSpec::Normal { mean, sigma } => {
            if !sigma.is_finite() || *sigma <= 0.0 {
                return Err(usage(format!("generator sigma must be positive, got {sigma}")));
            }
            Ok(DensityModel::gaussian(id, *mean, *sigma))
        }
        GeneratorSpec::Discrete { probs } => {
            let dist = DiscreteDistribution::new(probs.clone())?;
            Ok(dist.to_density_model(id))
        }
    }
}

fn read_points_file(path: &str) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line
            .parse()
            .map_err(|_| usage(format!("{path}:{}: `{line}` is not a number", idx + 1)))?;
        points.push(value);
    }
    Ok(points)
}

/// Materialize the sample; a size-only spec is rejected here.
fn resolve_sample(config: &RunConfig, seed: Option<u64>) -> Result<DataSample, CliError> {
    match &config.sample.source {
        SampleSource::Points(points) => Ok(DataSample::from_scalars(points)?),
        SampleSource::File(path) => Ok(DataSample::from_scalars(&read_points_file(path)?)?),
        SampleSource::Generator { spec, n } => {
            let seed =
                seed.ok_or_else(|| usage("--seed is required when [sample] uses a generator"))?;
            let model = generator_model(spec, "generator")?;
            let mut rng = seeded_rng(seed);
            let points: Vec<Vec<f64>> = (0..*n)
                .map(|_| model.sample(&mut rng))
                .collect::<gibbsmix::Result<_>>()?;
            Ok(DataSample::new(points)?)
        }
        SampleSource::SizeOnly { .. } => Err(usage(
            "[sample] n alone only works for data-free commands (beta-sweep, nishimori-check)",
        )),
    }
}

/// Sample size for data-free commands, without materializing points.
fn resolve_sample_size(config: &RunConfig) -> Result<usize, CliError> {
    let n = match &config.sample.source {
        SampleSource::SizeOnly { n } => *n,
        SampleSource::Generator { n, .. } => *n,
        SampleSource::Points(points) => points.len(),
        SampleSource::File(path) => read_points_file(path)?.len(),
    };
    if n == 0 {
        return Err(usage("[sample] n must be at least 1"));
    }
    Ok(n)
}

fn gaussian_list_set(list: &[GaussianSpec]) -> Result<ModelSet, CliError> {
    for g in list {
        if !g.sigma.is_finite() || g.sigma <= 0.0 {
            return Err(usage(format!(
                "model `{}`: sigma must be positive, got {}",
                g.id, g.sigma
            )));
        }
    }
    let models = list
        .iter()
        .map(|g| DensityModel::gaussian(g.id.clone(), g.mean, g.sigma))
        .collect();
    Ok(ModelSet::finite(models)?)
}

fn discrete_models(dists: &[DiscreteSpec]) -> Result<Vec<DiscreteDistribution>, CliError> {
    dists
        .iter()
        .map(|d| DiscreteDistribution::new(d.probs.clone()).map_err(CliError::from))
        .collect()
}

fn resolve_beta(spec: BetaSpec, n: usize) -> f64 {
    match spec {
        BetaSpec::Nishimori => n as f64,
        BetaSpec::Fixed(beta) => beta,
    }
}

fn x_grid(config: &RunConfig) -> Vec<f64> {
    let count = config.run.x_count;
    let step = (config.run.x_max - config.run.x_min) / (count - 1) as f64;
    (0..count)
        .map(|i| config.run.x_min + i as f64 * step)
        .collect()
}

fn grid_box_for(
    n: usize,
    mean_halfwidth_sds: Option<f64>,
    sigma_min_sds: Option<f64>,
    sigma_max_sds: Option<f64>,
) -> GridBox {
    let mut grid_box = GridBox::for_sample_size(n);
    if let Some(v) = mean_halfwidth_sds {
        grid_box.mean_halfwidth_sds = v;
    }
    if let Some(v) = sigma_min_sds {
        grid_box.sigma_min_sds = v;
    }
    if let Some(v) = sigma_max_sds {
        grid_box.sigma_max_sds = v;
    }
    grid_box
}

fn stats_meta(record: &mut ResultRecord, stats: &SampleStats, beta: f64) {
    record.meta("n", stats.n.to_string());
    record.meta("xbar", fmt_num(stats.mean));
    record.meta("vxi", fmt_num(stats.variance));
    record.meta("beta", fmt_num(beta));
}

/// Predictive density over the configured x-grid.
pub fn cmd_estimate(config: &RunConfig, seed: Option<u64>) -> Result<CommandOutput, CliError> {
    let sample = resolve_sample(config, seed)?;
    let stats = sample_stats(&sample)?;
    let beta = resolve_beta(config.run.beta, sample.len());
    let xs = x_grid(config);

    let mut record = ResultRecord::new("estimate", &["x", "density"]);
    echo_config(&mut record, config, seed);
    stats_meta(&mut record, &stats, beta);

    let densities: Vec<f64> = match &config.models {
        ModelsSpec::TwoGaussian { a } => {
            let set = TwoGaussianConfig::new(*a)?.model_set();
            let mix = PredictiveMixture::fit(set, &sample, beta)?;
            xs.iter().map(|x| mix.density(&[*x])).collect()
        }
        ModelsSpec::GaussianList(list) => {
            let mix = PredictiveMixture::fit(gaussian_list_set(list)?, &sample, beta)?;
            xs.iter().map(|x| mix.density(&[*x])).collect()
        }
        ModelsSpec::NormalGrid {
            mean_nodes,
            sigma_nodes,
            mean_halfwidth_sds,
            sigma_min_sds,
            sigma_max_sds,
        } => {
            let grid_box = grid_box_for(
                sample.len(),
                *mean_halfwidth_sds,
                *sigma_min_sds,
                *sigma_max_sds,
            );
            let grid = gaussian_grid(&stats, *mean_nodes, *sigma_nodes, &grid_box)?;
            let mix = PredictiveMixture::fit(grid, &sample, beta)?;
            xs.iter().map(|x| mix.density(&[*x])).collect()
        }
        ModelsSpec::NormalFamily => {
            if beta != sample.len() as f64 {
                return Err(usage(
                    "kind = normal-family evaluates the closed form, which requires beta = nishimori",
                ));
            }
            let posterior = NormalFamilyPosterior::new(stats)?;
            xs.iter().map(|x| posterior.density(*x)).collect()
        }
        ModelsSpec::Discrete(_) => {
            return Err(usage("kind = discrete is not supported by estimate"))
        }
    };

    for (x, density) in xs.iter().zip(densities) {
        record.row(vec![fmt_num(*x), fmt_num(density)]);
    }
    Ok(CommandOutput::ok(record))
}

/// Expected divergence to truth per beta: exact enumeration for discrete
/// sets, seeded Monte Carlo for continuous ones.
pub fn cmd_beta_sweep(config: &RunConfig, seed: Option<u64>) -> Result<CommandOutput, CliError> {
    let n = resolve_sample_size(config)?;
    let mut grid = config
        .run
        .beta_grid
        .clone()
        .ok_or_else(|| usage("[run] beta_grid is required for beta-sweep"))?;
    if grid.is_empty() {
        return Err(usage("[run] beta_grid must not be empty"));
    }
    let mut warnings = Vec::new();
    let nf = n as f64;
    if !grid.contains(&nf) {
        grid.push(nf);
        warnings.push(format!(
            "beta grid did not contain the sample size; appended beta = {nf}"
        ));
    }

    let mut record = ResultRecord::new(
        "beta-sweep",
        &["beta", "expected_kl", "stderr", "exact", "is_argmin"],
    );
    echo_config(&mut record, config, seed);
    record.meta("n", n.to_string());

    match &config.models {
        ModelsSpec::Discrete(dists) => {
            let models = discrete_models(dists)?;
            let sweep = beta_sweep_model_averaged(&models, n, &grid)?;
            record.meta("mode", "exact");
            record.meta("argmin_beta", fmt_num(sweep.argmin_beta));
            let argmin = sweep.argmin_index();
            for (j, (beta, value)) in sweep.betas.iter().zip(&sweep.expected_kl).enumerate() {
                record.row(vec![
                    fmt_num(*beta),
                    fmt_num(*value),
                    "0".to_string(),
                    "1".to_string(),
                    if j == argmin { "1" } else { "0" }.to_string(),
                ]);
            }
        }
        ModelsSpec::TwoGaussian { .. } | ModelsSpec::GaussianList(_) => {
            let set = match &config.models {
                ModelsSpec::TwoGaussian { a } => TwoGaussianConfig::new(*a)?.model_set(),
                ModelsSpec::GaussianList(list) => gaussian_list_set(list)?,
                _ => unreachable!(),
            };
            let gt_spec = config.run.gt.as_ref().ok_or_else(|| {
                usage("[run] gt is required for a Monte Carlo beta-sweep over continuous models")
            })?;
            let seed = seed
                .ok_or_else(|| usage("--seed is required for a Monte Carlo beta-sweep"))?;
            let gt = generator_model(gt_spec, "gt")?;
            let replicates = config.run.mc_replicates.unwrap_or(500);
            let eval_draws = config.run.mc_eval_draws.unwrap_or(10_000);
            record.meta("mode", "monte-carlo");
            record.meta("replicates", replicates.to_string());
            record.meta("eval_draws", eval_draws.to_string());

            let mut estimates = Vec::with_capacity(grid.len());
            for beta in &grid {
                let mc =
                    mc_expected_predictive_kl(&set, &gt, n, *beta, replicates, eval_draws, seed)?;
                estimates.push(mc);
            }
            let argmin = estimates
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| a.estimate.total_cmp(&b.estimate))
                .map(|(i, _)| i)
                .unwrap_or(0);
            record.meta("argmin_beta", fmt_num(grid[argmin]));
            for (j, (beta, mc)) in grid.iter().zip(&estimates).enumerate() {
                record.row(vec![
                    fmt_num(*beta),
                    fmt_num(mc.estimate),
                    fmt_num(mc.std_error),
                    "0".to_string(),
                    if j == argmin { "1" } else { "0" }.to_string(),
                ]);
            }
        }
        _ => {
            return Err(usage(
                "beta-sweep needs kind = discrete (exact) or two-gaussian / gaussian-list (Monte Carlo)",
            ))
        }
    }

    Ok(CommandOutput {
        record,
        exit_code: 0,
        warnings,
    })
}

pub const IDENTITY_GAP_THRESHOLD: f64 = 1e-10;

/// Exact internal-energy identity check; exit 0 iff the gap is below 1e-10.
pub fn cmd_nishimori_check(
    config: &RunConfig,
    seed: Option<u64>,
    perturb: bool,
) -> Result<CommandOutput, CliError> {
    let dists = match &config.models {
        ModelsSpec::Discrete(dists) => dists,
        _ => return Err(usage("nishimori-check requires kind = discrete")),
    };
    let n = resolve_sample_size(config)?;
    let models = discrete_models(dists)?;
    let report = internal_energy_identity_check(&models, n)?;
    let (lhs, mut rhs) = (report.lhs, report.rhs);
    if perturb {
        rhs += 1e-6;
    }
    let gap = (lhs - rhs).abs();

    let mut record = ResultRecord::new("nishimori-check", &["lhs", "rhs", "gap"]);
    echo_config(&mut record, config, seed);
    record.meta("n", n.to_string());
    record.meta("models", models.len().to_string());
    record.meta("threshold", fmt_num(IDENTITY_GAP_THRESHOLD));
    if perturb {
        record.meta("perturb", "rhs + 1e-6 (negative control)");
    }
    record.row(vec![fmt_num(lhs), fmt_num(rhs), fmt_num(gap)]);

    Ok(CommandOutput {
        record,
        exit_code: if gap < IDENTITY_GAP_THRESHOLD {
            0
        } else {
            crate::EXIT_CHECK_FAILED
        },
        warnings: Vec::new(),
    })
}

/// Rank candidate models by their estimated first-order improvement.
pub fn cmd_extend(config: &RunConfig, seed: Option<u64>) -> Result<CommandOutput, CliError> {
    let set = match &config.models {
        ModelsSpec::TwoGaussian { a } => TwoGaussianConfig::new(*a)?.model_set(),
        ModelsSpec::GaussianList(list) => gaussian_list_set(list)?,
        _ => {
            return Err(usage(
                "extend needs a finite continuous set (kind = two-gaussian or gaussian-list)",
            ))
        }
    };
    let sample = resolve_sample(config, seed)?;
    let candidates = config
        .run
        .candidates
        .as_ref()
        .filter(|c| !c.is_empty())
        .ok_or_else(|| usage("[run] candidates is required for extend"))?;
    let score_mode = config
        .run
        .score
        .ok_or_else(|| usage("[run] score (heldout or synthetic) is required for extend"))?;

    let holdout_sample;
    let gt_model;
    let reference = match score_mode {
        ScoreMode::HeldOut => {
            let points = config
                .run
                .holdout
                .as_ref()
                .filter(|p| !p.is_empty())
                .ok_or_else(|| usage("[run] holdout points are required for score = heldout"))?;
            holdout_sample = DataSample::from_scalars(points)?;
            ScoreReference::HeldOut(&holdout_sample)
        }
        ScoreMode::Synthetic => {
            let gt_spec = config
                .run
                .gt
                .as_ref()
                .ok_or_else(|| usage("[run] gt is required for score = synthetic"))?;
            gt_model = generator_model(gt_spec, "gt")?;
            let seed =
                seed.ok_or_else(|| usage("--seed is required for score = synthetic"))?;
            ScoreReference::SyntheticGt {
                gt: &gt_model,
                draws: config.run.score_draws.unwrap_or(10_000),
                seed,
            }
        }
    };

    let mut warnings = Vec::new();
    let mut rows: Vec<(String, f64, f64)> = Vec::with_capacity(candidates.len());
    for spec in candidates {
        if !spec.sigma.is_finite() || spec.sigma <= 0.0 {
            return Err(usage(format!(
                "candidate `{}`: sigma must be positive, got {}",
                spec.id, spec.sigma
            )));
        }
        let candidate = DensityModel::gaussian(spec.id.clone(), spec.mean, spec.sigma);
        let ratio = extension_ratio(&set, &sample, &candidate)?;
        if ratio > EXPANSION_RATIO_LIMIT {
            warnings.push(format!(
                "candidate `{}`: ratio {ratio:.4} exceeds {EXPANSION_RATIO_LIMIT}; first-order scores are unreliable",
                spec.id
            ));
        }
        let score = candidate_score(&set, &sample, &candidate, &reference)?;
        rows.push((spec.id.clone(), ratio, score));
    }
    rows.sort_by(|a, b| b.2.total_cmp(&a.2).then_with(|| a.0.cmp(&b.0)));

    let mut record = ResultRecord::new("extend", &["candidate", "ratio", "score"]);
    echo_config(&mut record, config, seed);
    record.meta("n", sample.len().to_string());
    record.meta(
        "score_mode",
        match score_mode {
            ScoreMode::HeldOut => "heldout",
            ScoreMode::Synthetic => "synthetic",
        },
    );
    for (id, ratio, score) in rows {
        record.row(vec![id, fmt_num(ratio), fmt_num(score)]);
    }
    Ok(CommandOutput {
        record,
        exit_code: 0,
        warnings,
    })
}

/// Per-step posterior weights under sequential single-point updating.
pub fn cmd_bayes_demo(config: &RunConfig, seed: Option<u64>) -> Result<CommandOutput, CliError> {
    let set = match &config.models {
        ModelsSpec::TwoGaussian { a } => TwoGaussianConfig::new(*a)?.model_set(),
        ModelsSpec::GaussianList(list) => gaussian_list_set(list)?,
        ModelsSpec::Discrete(dists) => {
            let models = discrete_models(dists)?;
            let embedded = models
                .iter()
                .zip(dists)
                .map(|(m, spec)| m.to_density_model(spec.id.clone()))
                .collect();
            ModelSet::finite(embedded)?
        }
        _ => {
            return Err(usage(
                "bayes-demo needs a finite set (two-gaussian, gaussian-list, or discrete)",
            ))
        }
    };
    let sample = resolve_sample(config, seed)?;

    let mut record = ResultRecord::new("bayes-demo", &["step", "model", "weight"]);
    echo_config(&mut record, config, seed);
    record.meta("n", sample.len().to_string());
    let batch_gap = batch_equivalence_check(&set, &sample)?;
    record.meta("batch_gap", fmt_num(batch_gap));

    let ids: Vec<String> = set.models().iter().map(|m| m.id().to_string()).collect();
    let mut posterior = ModelPosterior::uniform(&set)?;
    let emit = |record: &mut ResultRecord, step: usize, posterior: &ModelPosterior| {
        for (id, w) in ids.iter().zip(posterior.weights()) {
            record.row(vec![step.to_string(), id.clone(), fmt_num(w)]);
        }
    };
    emit(&mut record, 0, &posterior);
    for (step, point) in sample.points().iter().enumerate() {
        posterior = single_point_update(&set, &posterior, point)?;
        emit(&mut record, step + 1, &posterior);
    }
    Ok(CommandOutput::ok(record))
}

const FIG_GRID: usize = 1001;

fn fig_grid() -> Vec<f64> {
    (0..FIG_GRID)
        .map(|i| -5.0 + i as f64 * (10.0 / (FIG_GRID - 1) as f64))
        .collect()
}

/// Preset curves for the two-component family: a = 1, xbar = 0.1,
/// n in {2, 10, 50}, plus the favoured component for reference.
pub fn cmd_fig1() -> Result<CommandOutput, CliError> {
    let cfg = TwoGaussianConfig::new(1.0)?;
    let stats: Vec<SampleStats> = [2usize, 10, 50]
        .iter()
        .map(|&n| SampleStats::new(0.1, 1.0, n))
        .collect::<gibbsmix::Result<_>>()?;
    let mut record = ResultRecord::new(
        "fig1",
        &["x", "phat_n2", "phat_n10", "phat_n50", "p_plus"],
    );
    record.meta("a", "1");
    record.meta("xbar", "0.1");
    for x in fig_grid() {
        let mut row = vec![fmt_num(x)];
        for s in &stats {
            row.push(fmt_num(two_gaussian_predictive(&cfg, s, x)));
        }
        row.push(fmt_num(normal_ln_pdf(x, 1.0, 1.0).exp()));
        record.row(row);
    }
    Ok(CommandOutput::ok(record))
}

/// Preset curves for the all-normal family: xbar = 0, V = 1, n in {3, 10, 50},
/// plus the standard normal for reference.
pub fn cmd_fig2() -> Result<CommandOutput, CliError> {
    let posteriors: Vec<NormalFamilyPosterior> = [3usize, 10, 50]
        .iter()
        .map(|&n| NormalFamilyPosterior::new(SampleStats::new(0.0, 1.0, n)?))
        .collect::<gibbsmix::Result<_>>()?;
    let mut record = ResultRecord::new(
        "fig2",
        &["x", "phat_n3", "phat_n10", "phat_n50", "std_normal"],
    );
    record.meta("xbar", "0");
    record.meta("vxi", "1");
    for x in fig_grid() {
        let mut row = vec![fmt_num(x)];
        for p in &posteriors {
            row.push(fmt_num(p.density(x)));
        }
        row.push(fmt_num(normal_ln_pdf(x, 0.0, 1.0).exp()));
        record.row(row);
    }
    Ok(CommandOutput::ok(record))
}

//! Line-oriented `key = value` run configuration with `[section]` headers.
//!
//! Three sections are recognized: `[models]`, `[sample]`, and `[run]`.
//! Duplicate keys are always an error; unknown keys are an error in strict
//! mode and a warning otherwise. `serialize` emits a canonical form that
//! parses back to an equal config.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::CliError;

pub const MODELS_KEYS: &[&str] = &[
    "kind",
    "a",
    "list",
    "dists",
    "mean_nodes",
    "sigma_nodes",
    "mean_halfwidth_sds",
    "sigma_min_sds",
    "sigma_max_sds",
];
pub const SAMPLE_KEYS: &[&str] = &["points", "generator", "n", "file", "alphabet"];
pub const RUN_KEYS: &[&str] = &[
    "beta",
    "x_min",
    "x_max",
    "x_count",
    "beta_grid",
    "mc_replicates",
    "mc_eval_draws",
    "gt",
    "candidates",
    "score",
    "holdout",
    "score_draws",
];

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpec {
    pub id: String,
    pub mean: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpec {
    pub id: String,
    pub probs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelsSpec {
    TwoGaussian {
        a: f64,
    },
    GaussianList(Vec<GaussianSpec>),
    Discrete(Vec<DiscreteSpec>),
    NormalGrid {
        mean_nodes: usize,
        sigma_nodes: usize,
        mean_halfwidth_sds: Option<f64>,
        sigma_min_sds: Option<f64>,
        sigma_max_sds: Option<f64>,
    },
    NormalFamily,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Normal { mean: f64, sigma: f64 },
    Discrete { probs: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleSource {
    Points(Vec<f64>),
    Generator { spec: GeneratorSpec, n: usize },
    File(String),
    SizeOnly { n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpec {
    pub source: SampleSource,
    pub alphabet: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaSpec {
    /// Resolves to the sample size at run time.
    Nishimori,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreMode {
    HeldOut,
    Synthetic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunParams {
    pub beta: BetaSpec,
    pub x_min: f64,
    pub x_max: f64,
    pub x_count: usize,
    pub beta_grid: Option<Vec<f64>>,
    pub mc_replicates: Option<usize>,
    pub mc_eval_draws: Option<usize>,
    pub gt: Option<GeneratorSpec>,
    pub candidates: Option<Vec<GaussianSpec>>,
    pub score: Option<ScoreMode>,
    pub holdout: Option<Vec<f64>>,
    pub score_draws: Option<usize>,
}

impl Default for RunParams {
    fn default() -> Self {
        Self {
            beta: BetaSpec::Nishimori,
            x_min: -5.0,
            x_max: 5.0,
            x_count: 1001,
            beta_grid: None,
            mc_replicates: None,
            mc_eval_draws: None,
            gt: None,
            candidates: None,
            score: None,
            holdout: None,
            score_draws: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub models: ModelsSpec,
    pub sample: SampleSpec,
    pub run: RunParams,
}

struct RawLine {
    value: String,
    line_no: usize,
}

type KeyAtLine = (String, usize);

type Section = BTreeMap<String, RawLine>;

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn split_sections(text: &str) -> Result<BTreeMap<String, Section>, CliError> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| usage(format!("line {line_no}: unterminated section header")))?
                .trim()
                .to_string();
            if !matches!(name.as_str(), "models" | "sample" | "run") {
                return Err(usage(format!(
                    "line {line_no}: unknown section `[{name}]` (expected [models], [sample], or [run])"
                )));
            }
            if sections.contains_key(&name) {
                return Err(usage(format!(
                    "line {line_no}: duplicate section `[{name}]`"
                )));
            }
            sections.insert(name.clone(), Section::new());
            current = Some(name);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("line {line_no}: expected `key = value`")))?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        let section_name = current
            .clone()
            .ok_or_else(|| usage(format!("line {line_no}: key `{key}` before any section")))?;
        let section = sections.get_mut(&section_name).expect("section exists");
        if let Some(previous) = section.get(&key) {
            return Err(usage(format!(
                "line {line_no}: duplicate key `{key}` in [{section_name}] (first on line {})",
                previous.line_no
            )));
        }
        section.insert(key, RawLine { value, line_no });
    }
    Ok(sections)
}

/// Pull a key out of a section, tracking which keys were consumed.
struct SectionReader<'a> {
    name: &'a str,
    section: Option<&'a Section>,
    consumed: Vec<String>,
}

impl<'a> SectionReader<'a> {
    fn new(name: &'a str, section: Option<&'a Section>) -> Self {
        Self {
            name,
            section,
            consumed: Vec::new(),
        }
    }

    fn get(&mut self, key: &str) -> Option<&'a str> {
        self.consumed.push(key.to_string());
        self.section
            .and_then(|s| s.get(key))
            .map(|raw| raw.value.as_str())
    }

    /// Keys present in the file but never consumed, split into known-vocabulary
    /// keys (hard error: not applicable here) and unknown keys.
    fn leftovers(&self, vocabulary: &[&str]) -> (Vec<KeyAtLine>, Vec<KeyAtLine>) {
        let mut inapplicable = Vec::new();
        let mut unknown = Vec::new();
        if let Some(section) = self.section {
            for (key, raw) in section {
                if self.consumed.iter().any(|c| c == key) {
                    continue;
                }
                if vocabulary.contains(&key.as_str()) {
                    inapplicable.push((key.clone(), raw.line_no));
                } else {
                    unknown.push((key.clone(), raw.line_no));
                }
            }
        }
        (inapplicable, unknown)
    }
}

fn parse_f64(section: &str, key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .map_err(|_| usage(format!("[{section}] {key}: `{value}` is not a number")))
}

fn parse_usize(section: &str, key: &str, value: &str) -> Result<usize, CliError> {
    value
        .parse::<usize>()
        .map_err(|_| usage(format!("[{section}] {key}: `{value}` is not a nonnegative integer")))
}

fn parse_f64_list(section: &str, key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    value
        .split(',')
        .map(|item| parse_f64(section, key, item.trim()))
        .collect()
}

fn parse_prob_list(section: &str, key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    value
        .split('|')
        .map(|item| parse_f64(section, key, item.trim()))
        .collect()
}

fn parse_gaussian_list(section: &str, key: &str, value: &str) -> Result<Vec<GaussianSpec>, CliError> {
    value
        .split(',')
        .map(|entry| {
            let parts: Vec<&str> = entry.trim().split(':').collect();
            if parts.len() != 3 {
                return Err(usage(format!(
                    "[{section}] {key}: entry `{}` must be id:mean:sigma",
                    entry.trim()
                )));
            }
            Ok(GaussianSpec {
                id: parts[0].trim().to_string(),
                mean: parse_f64(section, key, parts[1].trim())?,
                sigma: parse_f64(section, key, parts[2].trim())?,
            })
        })
        .collect()
}

fn parse_discrete_list(section: &str, key: &str, value: &str) -> Result<Vec<DiscreteSpec>, CliError> {
    value
        .split(',')
        .map(|entry| {
            let (id, probs) = entry.trim().split_once(':').ok_or_else(|| {
                usage(format!(
                    "[{section}] {key}: entry `{}` must be id:p0|p1|...",
                    entry.trim()
                ))
            })?;
            Ok(DiscreteSpec {
                id: id.trim().to_string(),
                probs: parse_prob_list(section, key, probs)?,
            })
        })
        .collect()
}

fn parse_generator(section: &str, key: &str, value: &str) -> Result<GeneratorSpec, CliError> {
    if let Some(rest) = value.strip_prefix("normal:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            return Err(usage(format!(
                "[{section}] {key}: normal generator must be normal:mean:sigma"
            )));
        }
        return Ok(GeneratorSpec::Normal {
            mean: parse_f64(section, key, parts[0].trim())?,
            sigma: parse_f64(section, key, parts[1].trim())?,
        });
    }
    if let Some(rest) = value.strip_prefix("discrete:") {
        return Ok(GeneratorSpec::Discrete {
            probs: parse_prob_list(section, key, rest)?,
        });
    }
    Err(usage(format!(
        "[{section}] {key}: `{value}` must start with normal: or discrete:"
    )))
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn fmt_gaussian_list(list: &[GaussianSpec]) -> String {
    list.iter()
        .map(|g| format!("{}:{}:{}", g.id, fmt_f64(g.mean), fmt_f64(g.sigma)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn fmt_generator(g: &GeneratorSpec) -> String {
    match g {
        GeneratorSpec::Normal { mean, sigma } => {
            format!("normal:{}:{}", fmt_f64(*mean), fmt_f64(*sigma))
        }
        GeneratorSpec::Discrete { probs } => format!(
            "discrete:{}",
            probs.iter().map(|p| fmt_f64(*p)).collect::<Vec<_>>().join("|")
        ),
    }
}

impl RunConfig {
    /// Parse and fully validate. Returns the config plus warnings for unknown
    /// keys (non-strict mode only; strict mode turns them into errors).
    pub fn parse(text: &str, strict: bool) -> Result<(Self, Vec<String>), CliError> {
        let sections = split_sections(text)?;
        let mut warnings = Vec::new();

        // [models]
        let mut models_reader = SectionReader::new("models", sections.get("models"));
        let kind = models_reader
            .get("kind")
            .ok_or_else(|| usage("[models] kind is required"))?;
        let models = match kind {
            "two-gaussian" => {
                let a = models_reader
                    .get("a")
                    .ok_or_else(|| usage("[models] a is required for kind = two-gaussian"))?;
                ModelsSpec::TwoGaussian {
                    a: parse_f64("models", "a", a)?,
                }
            }
            "gaussian-list" => {
                let list = models_reader
                    .get("list")
                    .ok_or_else(|| usage("[models] list is required for kind = gaussian-list"))?;
                ModelsSpec::GaussianList(parse_gaussian_list("models", "list", list)?)
            }
            "discrete" => {
                let dists = models_reader
                    .get("dists")
                    .ok_or_else(|| usage("[models] dists is required for kind = discrete"))?;
                ModelsSpec::Discrete(parse_discrete_list("models", "dists", dists)?)
            }
            "normal-grid" => {
                let mean_nodes = models_reader
                    .get("mean_nodes")
                    .map(|v| parse_usize("models", "mean_nodes", v))
                    .transpose()?
                    .unwrap_or(200);
                let sigma_nodes = models_reader
                    .get("sigma_nodes")
                    .map(|v| parse_usize("models", "sigma_nodes", v))
                    .transpose()?
                    .unwrap_or(200);
                let mean_halfwidth_sds = models_reader
                    .get("mean_halfwidth_sds")
                    .map(|v| parse_f64("models", "mean_halfwidth_sds", v))
                    .transpose()?;
                let sigma_min_sds = models_reader
                    .get("sigma_min_sds")
                    .map(|v| parse_f64("models", "sigma_min_sds", v))
                    .transpose()?;
                let sigma_max_sds = models_reader
                    .get("sigma_max_sds")
                    .map(|v| parse_f64("models", "sigma_max_sds", v))
                    .transpose()?;
                ModelsSpec::NormalGrid {
                    mean_nodes,
                    sigma_nodes,
                    mean_halfwidth_sds,
                    sigma_min_sds,
                    sigma_max_sds,
                }
            }
            "normal-family" => ModelsSpec::NormalFamily,
            other => {
                return Err(usage(format!(
                    "[models] kind: `{other}` is not one of two-gaussian, gaussian-list, discrete, normal-grid, normal-family"
                )))
            }
        };

        // [sample]
        let mut sample_reader = SectionReader::new("sample", sections.get("sample"));
        let points = sample_reader.get("points");
        let generator = sample_reader.get("generator");
        let file = sample_reader.get("file");
        let n_value = sample_reader.get("n");
        let alphabet = sample_reader
            .get("alphabet")
            .map(|v| parse_usize("sample", "alphabet", v))
            .transpose()?;

        let mut source_keys = Vec::new();
        if points.is_some() {
            source_keys.push("points");
        }
        if generator.is_some() {
            source_keys.push("generator");
        }
        if file.is_some() {
            source_keys.push("file");
        }
        if source_keys.len() > 1 {
            return Err(usage(format!(
                "[sample] conflicting sample sources: {}",
                source_keys.join(", ")
            )));
        }
        let source = if let Some(points) = points {
            if n_value.is_some() {
                return Err(usage(
                    "[sample] conflicting sample sources: points together with n",
                ));
            }
            SampleSource::Points(parse_f64_list("sample", "points", points)?)
        } else if let Some(generator) = generator {
            let n = n_value
                .ok_or_else(|| usage("[sample] n is required with generator"))?;
            SampleSource::Generator {
                spec: parse_generator("sample", "generator", generator)?,
                n: parse_usize("sample", "n", n)?,
            }
        } else if let Some(file) = file {
            if n_value.is_some() {
                return Err(usage(
                    "[sample] conflicting sample sources: file together with n",
                ));
            }
            SampleSource::File(file.to_string())
        } else if let Some(n) = n_value {
            SampleSource::SizeOnly {
                n: parse_usize("sample", "n", n)?,
            }
        } else {
            return Err(usage(
                "[sample] needs exactly one source: points, generator (with n), file, or n",
            ));
        };

        // [run]
        let mut run_reader = SectionReader::new("run", sections.get("run"));
        let mut run = RunParams::default();
        if let Some(beta) = run_reader.get("beta") {
            run.beta = if beta == "nishimori" {
                BetaSpec::Nishimori
            } else {
                BetaSpec::Fixed(parse_f64("run", "beta", beta)?)
            };
        }
        if let Some(v) = run_reader.get("x_min") {
            run.x_min = parse_f64("run", "x_min", v)?;
        }
        if let Some(v) = run_reader.get("x_max") {
            run.x_max = parse_f64("run", "x_max", v)?;
        }
        if let Some(v) = run_reader.get("x_count") {
            run.x_count = parse_usize("run", "x_count", v)?;
        }
        if let Some(v) = run_reader.get("beta_grid") {
            run.beta_grid = Some(parse_f64_list("run", "beta_grid", v)?);
        }
        if let Some(v) = run_reader.get("mc_replicates") {
            run.mc_replicates = Some(parse_usize("run", "mc_replicates", v)?);
        }
        if let Some(v) = run_reader.get("mc_eval_draws") {
            run.mc_eval_draws = Some(parse_usize("run", "mc_eval_draws", v)?);
        }
        if let Some(v) = run_reader.get("gt") {
            run.gt = Some(parse_generator("run", "gt", v)?);
        }
        if let Some(v) = run_reader.get("candidates") {
            run.candidates = Some(parse_gaussian_list("run", "candidates", v)?);
        }
        if let Some(v) = run_reader.get("score") {
            run.score = Some(match v {
                "heldout" => ScoreMode::HeldOut,
                "synthetic" => ScoreMode::Synthetic,
                other => {
                    return Err(usage(format!(
                        "[run] score: `{other}` is not heldout or synthetic"
                    )))
                }
            });
        }
        if let Some(v) = run_reader.get("holdout") {
            run.holdout = Some(parse_f64_list("run", "holdout", v)?);
        }
        if let Some(v) = run_reader.get("score_draws") {
            run.score_draws = Some(parse_usize("run", "score_draws", v)?);
        }

        if run.x_count < 2 {
            return Err(usage("[run] x_count must be at least 2"));
        }
        if run.x_min >= run.x_max {
            return Err(usage("[run] x_min must be below x_max"));
        }

        for (reader, vocabulary) in [
            (&models_reader, MODELS_KEYS),
            (&sample_reader, SAMPLE_KEYS),
            (&run_reader, RUN_KEYS),
        ] {
            let (inapplicable, unknown) = reader.leftovers(vocabulary);
            if let Some((key, line_no)) = inapplicable.first() {
                return Err(usage(format!(
                    "line {line_no}: key `{key}` does not apply to this [{}] configuration",
                    reader.name
                )));
            }
            for (key, line_no) in unknown {
                let message =
                    format!("line {line_no}: unknown key `{key}` in [{}]", reader.name);
                if strict {
                    return Err(usage(message));
                }
                warnings.push(message);
            }
        }

        Ok((
            Self {
                models,
                sample: SampleSpec { source, alphabet },
                run,
            },
            warnings,
        ))
    }

    /// Canonical text form; `parse(serialize(c))` equals `c`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("[models]\n");
        match &self.models {
            ModelsSpec::TwoGaussian { a } => {
                let _ = writeln!(out, "kind = two-gaussian");
                let _ = writeln!(out, "a = {}", fmt_f64(*a));
            }
            ModelsSpec::GaussianList(list) => {
                let _ = writeln!(out, "kind = gaussian-list");
                let _ = writeln!(out, "list = {}", fmt_gaussian_list(list));
            }
            ModelsSpec::Discrete(dists) => {
                let _ = writeln!(out, "kind = discrete");
                let rendered = dists
                    .iter()
                    .map(|d| {
                        format!(
                            "{}:{}",
                            d.id,
                            d.probs
                                .iter()
                                .map(|p| fmt_f64(*p))
                                .collect::<Vec<_>>()
                                .join("|")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                let _ = writeln!(out, "dists = {rendered}");
            }
            ModelsSpec::NormalGrid {
                mean_nodes,
                sigma_nodes,
                mean_halfwidth_sds,
                sigma_min_sds,
                sigma_max_sds,
            } => {
                let _ = writeln!(out, "kind = normal-grid");
                let _ = writeln!(out, "mean_nodes = {mean_nodes}");
                let _ = writeln!(out, "sigma_nodes = {sigma_nodes}");
                if let Some(v) = mean_halfwidth_sds {
                    let _ = writeln!(out, "mean_halfwidth_sds = {}", fmt_f64(*v));
                }
                if let Some(v) = sigma_min_sds {
                    let _ = writeln!(out, "sigma_min_sds = {}", fmt_f64(*v));
                }
                if let Some(v) = sigma_max_sds {
                    let _ = writeln!(out, "sigma_max_sds = {}", fmt_f64(*v));
                }
            }
            ModelsSpec::NormalFamily => {
                let _ = writeln!(out, "kind = normal-family");
            }
        }

        out.push_str("\n[sample]\n");
        match &self.sample.source {
            SampleSource::Points(points) => {
                let rendered = points
                    .iter()
                    .map(|p| fmt_f64(*p))
                    .collect::<Vec<_>>()
                    .join(", ");
                let _ = writeln!(out, "points = {rendered}");
            }
            SampleSource::Generator { spec, n } => {
                let _ = writeln!(out, "generator = {}", fmt_generator(spec));
                let _ = writeln!(out, "n = {n}");
            }
            SampleSource::File(path) => {
                let _ = writeln!(out, "file = {path}");
            }
            SampleSource::SizeOnly { n } => {
                let _ = writeln!(out, "n = {n}");
            }
        }
        if let Some(alphabet) = self.sample.alphabet {
            let _ = writeln!(out, "alphabet = {alphabet}");
        }

        out.push_str("\n[run]\n");
        match self.run.beta {
            BetaSpec::Nishimori => {
                let _ = writeln!(out, "beta = nishimori");
            }
            BetaSpec::Fixed(b) => {
                let _ = writeln!(out, "beta = {}", fmt_f64(b));
            }
        }
        let _ = writeln!(out, "x_min = {}", fmt_f64(self.run.x_min));
        let _ = writeln!(out, "x_max = {}", fmt_f64(self.run.x_max));
        let _ = writeln!(out, "x_count = {}", self.run.x_count);
        if let Some(grid) = &self.run.beta_grid {
            let rendered = grid
                .iter()
                .map(|b| fmt_f64(*b))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "beta_grid = {rendered}");
        }
        if let Some(v) = self.run.mc_replicates {
            let _ = writeln!(out, "mc_replicates = {v}");
        }
        if let Some(v) = self.run.mc_eval_draws {
            let _ = writeln!(out, "mc_eval_draws = {v}");
        }
        if let Some(gt) = &self.run.gt {
            let _ = writeln!(out, "gt = {}", fmt_generator(gt));
        }
        if let Some(candidates) = &self.run.candidates {
            let _ = writeln!(out, "candidates = {}", fmt_gaussian_list(candidates));
        }
        if let Some(score) = self.run.score {
            let rendered = match score {
                ScoreMode::HeldOut => "heldout",
                ScoreMode::Synthetic => "synthetic",
            };
            let _ = writeln!(out, "score = {rendered}");
        }
        if let Some(holdout) = &self.run.holdout {
            let rendered = holdout
                .iter()
                .map(|p| fmt_f64(*p))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "holdout = {rendered}");
        }
        if let Some(v) = self.run.score_draws {
            let _ = writeln!(out, "score_draws = {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
[models]
kind = two-gaussian
a = 1

[sample]
points = 0.1, -0.2, 0.3
";

    #[test]
    fn minimal_config_parses_with_defaults() {
        let (config, warnings) = RunConfig::parse(MINIMAL, true).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(config.models, ModelsSpec::TwoGaussian { a: 1.0 });
        assert_eq!(
            config.sample.source,
            SampleSource::Points(vec![0.1, -0.2, 0.3])
        );
        assert_eq!(config.run.beta, BetaSpec::Nishimori);
        assert_eq!(config.run.x_count, 1001);
    }

    #[test]
    fn duplicate_key_is_named_with_line() {
        let text = "[models]\nkind = two-gaussian\na = 1\na = 2\n\n[sample]\npoints = 0\n";
        let err = RunConfig::parse(text, false).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("duplicate key `a`"), "{message}");
        assert!(message.contains("line 4"), "{message}");
    }

    #[test]
    fn unknown_key_warns_then_errors_in_strict_mode() {
        let text = "[models]\nkind = two-gaussian\na = 1\nwhatever = 3\n\n[sample]\npoints = 0\n";
        let (_, warnings) = RunConfig::parse(text, false).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("unknown key `whatever`"));

        let err = RunConfig::parse(text, true).unwrap_err();
        assert!(err.to_string().contains("whatever"));
    }

    #[test]
    fn inapplicable_key_is_always_an_error() {
        let text = "[models]\nkind = two-gaussian\na = 1\ndists = p:0.5|0.5\n\n[sample]\npoints = 0\n";
        let err = RunConfig::parse(text, false).unwrap_err();
        assert!(err.to_string().contains("`dists`"));
    }

    #[test]
    fn conflicting_sources_are_rejected() {
        let text = "[models]\nkind = two-gaussian\na = 1\n\n[sample]\npoints = 0\nfile = data.txt\n";
        let err = RunConfig::parse(text, false).unwrap_err();
        assert!(err.to_string().contains("conflicting sample sources"));
    }

    #[test]
    fn generator_requires_n() {
        let text = "[models]\nkind = two-gaussian\na = 1\n\n[sample]\ngenerator = normal:0:1\n";
        let err = RunConfig::parse(text, false).unwrap_err();
        assert!(err.to_string().contains("n is required"));
    }

    #[test]
    fn canonical_round_trip() {
        let (config, _) = RunConfig::parse(MINIMAL, true).unwrap();
        let text = config.serialize();
        let (reparsed, warnings) = RunConfig::parse(&text, true).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(config, reparsed);
    }
}

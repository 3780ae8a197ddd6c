//! Round-trip property: any valid config serializes to text that parses back
//! to an equal config.

use gibbsmix_cli::config::{
    BetaSpec, DiscreteSpec, GaussianSpec, GeneratorSpec, ModelsSpec, RunConfig, RunParams,
    SampleSource, SampleSpec, ScoreMode,
};
use proptest::prelude::*;

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,8}".prop_map(|s| s)
}

fn finite_f64() -> impl Strategy<Value = f64> {
    prop_oneof![
        -100.0f64..100.0,
        Just(0.1),
        Just(-0.25),
        Just(1e-3),
        Just(12345.678),
    ]
}

fn gaussian_spec() -> impl Strategy<Value = GaussianSpec> {
    (ident(), finite_f64(), 0.01f64..10.0).prop_map(|(id, mean, sigma)| GaussianSpec {
        id,
        mean,
        sigma,
    })
}

fn prob_vec() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..1.0, 2..5).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        raw.iter().map(|v| v / total).collect()
    })
}

fn unique_by_id<T, F: Fn(&T) -> &str>(items: Vec<T>, id_of: F) -> Vec<T> {
    let mut seen = std::collections::HashSet::new();
    items
        .into_iter()
        .filter(|item| seen.insert(id_of(item).to_string()))
        .collect()
}

fn models_spec() -> impl Strategy<Value = ModelsSpec> {
    prop_oneof![
        (0.01f64..5.0).prop_map(|a| ModelsSpec::TwoGaussian { a }),
        prop::collection::vec(gaussian_spec(), 1..4).prop_map(|list| {
            ModelsSpec::GaussianList(unique_by_id(list, |g| &g.id))
        }),
        prop::collection::vec((ident(), prob_vec()), 1..4).prop_map(|dists| {
            let specs = dists
                .into_iter()
                .map(|(id, probs)| DiscreteSpec { id, probs })
                .collect();
            ModelsSpec::Discrete(unique_by_id(specs, |d| &d.id))
        }),
        (2usize..300, 2usize..300, prop::option::of(1.0f64..50.0)).prop_map(
            |(mean_nodes, sigma_nodes, hw)| ModelsSpec::NormalGrid {
                mean_nodes,
                sigma_nodes,
                mean_halfwidth_sds: hw,
                sigma_min_sds: None,
                sigma_max_sds: None,
            }
        ),
        Just(ModelsSpec::NormalFamily),
    ]
}

fn sample_spec() -> impl Strategy<Value = SampleSpec> {
    let source = prop_oneof![
        prop::collection::vec(finite_f64(), 1..8).prop_map(SampleSource::Points),
        (finite_f64(), 0.05f64..5.0, 1usize..50).prop_map(|(mean, sigma, n)| {
            SampleSource::Generator {
                spec: GeneratorSpec::Normal { mean, sigma },
                n,
            }
        }),
        prob_vec().prop_flat_map(|probs| {
            (1usize..30).prop_map(move |n| SampleSource::Generator {
                spec: GeneratorSpec::Discrete {
                    probs: probs.clone(),
                },
                n,
            })
        }),
        (1usize..100).prop_map(|n| SampleSource::SizeOnly { n }),
    ];
    (source, prop::option::of(2usize..6)).prop_map(|(source, alphabet)| SampleSpec {
        source,
        alphabet,
    })
}

fn run_params() -> impl Strategy<Value = RunParams> {
    (
        prop_oneof![
            Just(BetaSpec::Nishimori),
            (0.0f64..100.0).prop_map(BetaSpec::Fixed)
        ],
        prop::option::of(prop::collection::vec(0.1f64..40.0, 1..6)),
        prop::option::of(prop::collection::vec(gaussian_spec(), 1..3)),
        prop::option::of(prop_oneof![
            Just(ScoreMode::HeldOut),
            Just(ScoreMode::Synthetic)
        ]),
        prop::option::of(prop::collection::vec(finite_f64(), 1..5)),
        prop::option::of(100usize..2000),
    )
        .prop_map(
            |(beta, beta_grid, candidates, score, holdout, score_draws)| RunParams {
                beta,
                x_min: -5.0,
                x_max: 5.0,
                x_count: 1001,
                beta_grid,
                mc_replicates: None,
                mc_eval_draws: None,
                gt: None,
                candidates: candidates.map(|c| unique_by_id(c, |g| &g.id)),
                score,
                holdout,
                score_draws,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialize_then_parse_is_identity(
        models in models_spec(),
        sample in sample_spec(),
        run in run_params(),
    ) {
        let config = RunConfig { models, sample, run };
        let text = config.serialize();
        let (reparsed, warnings) = RunConfig::parse(&text, true)
            .map_err(|e| TestCaseError::fail(format!("{e}\n---\n{text}")))?;
        prop_assert!(warnings.is_empty());
        prop_assert_eq!(config, reparsed, "text:\n{}", text);
    }
}

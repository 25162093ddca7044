//! Seeded random capacities and sorting problems.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::capacity::{validate_two_additive, ShapleyInteractionModel};
use crate::engine::SortingProblem;
use crate::error::{Error, Result};
use crate::io::{CapacitySpec, NamedValues, OptionsSpec, ProblemFile, RunSettings, PROBLEM_SCHEMA};
use crate::preference::{CriterionSpec, Direction};
use crate::registry::Registry;
use crate::validation::ValidationMode;

/// Shape of a random sorting problem. The profile gaps follow `mode`: in weak
/// mode some gaps are zero, in strict mode every gap exceeds the indifference
/// threshold, and in strong mode every gap exceeds twice the distance at which
/// the preference function saturates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceGenConfig {
    pub n_criteria: usize,
    pub n_categories: usize,
    pub n_alternatives: usize,
    pub seed: u64,
    /// Preference function names drawn uniformly per criterion.
    pub functions: Vec<String>,
    pub mode: ValidationMode,
    /// Probability that a pair of criteria interacts.
    pub interaction_density: f64,
    /// Raw interactions are drawn from `[-magnitude, magnitude]` (restricted
    /// by `interaction_signs`) before rescaling.
    pub interaction_magnitude: f64,
    #[serde(default)]
    pub interaction_signs: InteractionSigns,
}

/// Which signs random interaction indices may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionSigns {
    /// Synergies and redundancies.
    #[default]
    Any,
    /// Synergies only.
    NonNegative,
    /// Redundancies only.
    NonPositive,
}

impl InteractionSigns {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "any" => Some(Self::Any),
            "non_negative" | "nonnegative" => Some(Self::NonNegative),
            "non_positive" | "nonpositive" => Some(Self::NonPositive),
            _ => None,
        }
    }

    fn range(self, magnitude: f64) -> std::ops::RangeInclusive<f64> {
        match self {
            Self::Any => -magnitude..=magnitude,
            Self::NonNegative => 0.0..=magnitude,
            Self::NonPositive => -magnitude..=0.0,
        }
    }
}

impl Default for InstanceGenConfig {
    fn default() -> Self {
        Self {
            n_criteria: 4,
            n_categories: 3,
            n_alternatives: 10,
            seed: 0,
            functions: ["usual", "u_shape", "v_shape", "level", "linear"]
                .map(String::from)
                .to_vec(),
            mode: ValidationMode::Strict,
            interaction_density: 0.5,
            interaction_magnitude: 0.4,
            interaction_signs: InteractionSigns::Any,
        }
    }
}

/// A generated problem in file form and validated form.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub config: InstanceGenConfig,
    pub file: ProblemFile,
    pub problem: SortingProblem,
}

/// A random valid 2-additive model: positive Shapley values normalized to sum
/// to one, pair interactions drawn with probability `density`, then all
/// interactions scaled by the largest factor in `[0, 1]` keeping every
/// `I_j − ½ Σ_s |I_js|` nonnegative.
pub fn gen_two_additive(
    n: usize,
    seed: u64,
    density: f64,
    magnitude: f64,
) -> Result<ShapleyInteractionModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    two_additive_with(&mut rng, n, density, magnitude, InteractionSigns::Any)
}

fn two_additive_with(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
    magnitude: f64,
    signs: InteractionSigns,
) -> Result<ShapleyInteractionModel> {
    if n < 2 {
        return Err(Error::Generation(format!(
            "a 2-additive model needs at least 2 criteria, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&density) || !(magnitude.is_finite() && magnitude >= 0.0) {
        return Err(Error::Generation(format!(
            "density must lie in [0, 1] and magnitude be nonnegative (got {density}, {magnitude})"
        )));
    }
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let shapley: Vec<f64> = raw.iter().map(|w| w / total).collect();

    let mut pairs = Vec::new();
    for j in 0..n {
        for s in j + 1..n {
            if rng.random_bool(density) && magnitude > 0.0 {
                pairs.push(((j, s), rng.random_range(signs.range(magnitude))));
            }
        }
    }
    let mut tied = vec![0.0; n];
    for ((j, s), v) in &pairs {
        tied[*j] += f64::abs(*v);
        tied[*s] += f64::abs(*v);
    }
    let scale = (0..n)
        .filter(|&j| tied[j] > 0.0)
        .map(|j| 2.0 * shapley[j] / tied[j])
        .fold(1.0, f64::min);
    let pairs: Vec<_> = pairs
        .into_iter()
        .map(|(p, v)| (p, v * scale))
        .filter(|(_, v)| *v != 0.0)
        .collect();
    let model = ShapleyInteractionModel::new(shapley, pairs)?;
    let report = validate_two_additive(&model);
    if !report.is_valid() {
        return Err(Error::Generation(format!(
            "rescaled model is still invalid:\n{report}"
        )));
    }
    Ok(model)
}

struct Shape {
    spec: CriterionSpec,
    /// Smallest difference with full preference, `None` if never reached.
    saturation: Option<f64>,
    indifference: f64,
    scale: f64,
}

fn draw_criterion(rng: &mut ChaCha8Rng, j: usize, function: &str) -> Result<Shape> {
    let scale = 10f64.powf(rng.random_range(0.0..3.0));
    let direction = if rng.random_bool(0.5) {
        Direction::Maximize
    } else {
        Direction::Minimize
    };
    let mut spec = CriterionSpec::usual(format!("g{}", j + 1), direction);
    spec.function = function.to_string();
    let (saturation, indifference) = match function {
        "usual" => (Some(0.0), 0.0),
        "u_shape" => {
            let q = rng.random_range(0.05..0.5) * scale;
            spec.q = Some(q);
            (Some(q), q)
        }
        "v_shape" => {
            let p = rng.random_range(0.1..1.0) * scale;
            spec.p = Some(p);
            (Some(p), 0.0)
        }
        "level" | "linear" => {
            let q = rng.random_range(0.05..0.4) * scale;
            let p = q + rng.random_range(0.1..0.6) * scale;
            spec.q = Some(q);
            spec.p = Some(p);
            (Some(p), q)
        }
        "gaussian" => {
            spec.s = Some(rng.random_range(0.2..1.0) * scale);
            (None, 0.0)
        }
        other => {
            return Err(Error::Generation(format!(
                "no generator for preference function {other}"
            )))
        }
    };
    Ok(Shape {
        spec,
        saturation,
        indifference,
        scale,
    })
}

fn named(prefix: &str, i: usize, criteria: &[CriterionSpec], row: &[f64]) -> NamedValues {
    NamedValues {
        name: format!("{prefix}{}", i + 1),
        values: criteria
            .iter()
            .zip(row)
            .map(|(c, v)| (c.name.clone(), *v))
            .collect::<BTreeMap<_, _>>(),
    }
}

/// Draws a problem file for `cfg` and checks that it passes `cfg.mode`.
pub fn generate_instance(cfg: &InstanceGenConfig) -> Result<GeneratedInstance> {
    let (n, k, m) = (cfg.n_criteria, cfg.n_categories, cfg.n_alternatives);
    if n == 0 || k == 0 {
        return Err(Error::Generation(
            "need at least one criterion and one category".into(),
        ));
    }
    if cfg.functions.is_empty() {
        return Err(Error::Generation(
            "no preference functions to draw from".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let shapes = (0..n)
        .map(|j| {
            let f = &cfg.functions[rng.random_range(0..cfg.functions.len())];
            draw_criterion(&mut rng, j, f)
        })
        .collect::<Result<Vec<_>>>()?;

    // Profiles in "goodness" units (higher is better), converted at the end.
    let mut goodness = vec![vec![0.0; n]; k + 1];
    for (j, shape) in shapes.iter().enumerate() {
        goodness[0][j] = rng.random_range(-5.0..5.0) * shape.scale;
        for h in 1..=k {
            let extra = rng.random_range(0.2..2.0) * shape.scale;
            let gap = match cfg.mode {
                ValidationMode::Weak => {
                    if rng.random_bool(0.25) {
                        0.0
                    } else {
                        extra
                    }
                }
                ValidationMode::Strict => shape.indifference + extra,
                ValidationMode::Strong => match shape.saturation {
                    Some(sat) => 2.0 * sat + extra,
                    None => {
                        return Err(Error::Generation(format!(
                            "criterion {} uses {}, which never reaches full preference, so strong profile separation is impossible",
                            shape.spec.name, shape.spec.function
                        )))
                    }
                },
            };
            goodness[h][j] = goodness[h - 1][j] - gap;
        }
    }
    let orient = |j: usize, g: f64| match shapes[j].spec.direction {
        Direction::Maximize => g,
        Direction::Minimize => -g,
    };

    let alternatives: Vec<Vec<f64>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|j| {
                    let g = if rng.random_bool(0.1) {
                        goodness[rng.random_range(0..=k)][j]
                    } else {
                        let (lo, hi) = (goodness[k][j], goodness[0][j]);
                        if hi > lo {
                            rng.random_range(lo..=hi)
                        } else {
                            lo
                        }
                    };
                    orient(j, g)
                })
                .collect()
        })
        .collect();
    let profiles: Vec<Vec<f64>> = goodness
        .iter()
        .map(|row| row.iter().enumerate().map(|(j, g)| orient(j, *g)).collect())
        .collect();

    let criteria: Vec<CriterionSpec> = shapes.into_iter().map(|s| s.spec).collect();
    let model = if n == 1 {
        ShapleyInteractionModel::additive(vec![1.0])?
    } else {
        two_additive_with(
            &mut rng,
            n,
            cfg.interaction_density,
            cfg.interaction_magnitude,
            cfg.interaction_signs,
        )?
    };
    let file = ProblemFile {
        schema: PROBLEM_SCHEMA.to_string(),
        name: Some(format!("generated instance {}", cfg.seed)),
        profiles: profiles
            .iter()
            .enumerate()
            .map(|(h, r)| named("r_", h, &criteria, r))
            .collect(),
        categories: None,
        alternatives: alternatives
            .iter()
            .enumerate()
            .map(|(i, a)| named("a", i, &criteria, a))
            .collect(),
        capacity: CapacitySpec::from_shapley(&model, &criteria),
        options: OptionsSpec {
            mode: Some(cfg.mode),
            ..OptionsSpec::default()
        },
        qualitative: None,
        criteria,
    };
    let settings = RunSettings {
        mode: cfg.mode,
        ..RunSettings::default()
    };
    let problem = file.build(&Registry::default(), &settings).map_err(|e| {
        Error::Generation(format!("generated instance {} is invalid: {e}", cfg.seed))
    })?;
    Ok(GeneratedInstance {
        config: cfg.clone(),
        file,
        problem,
    })
}

/// A random problem passing `cfg.mode` validation.
pub fn gen_problem(cfg: &InstanceGenConfig) -> Result<SortingProblem> {
    Ok(generate_instance(cfg)?.problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{sort_all, SortOptions};

    #[test]
    fn zero_density_is_additive() {
        let model = gen_two_additive(5, 3, 0.0, 0.5).unwrap();
        assert_eq!(model.interactions().count(), 0);
        assert!((model.shapley().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(model.shapley().iter().all(|v| *v > 0.0));
    }

    #[test]
    fn same_seed_same_model() {
        let a = gen_two_additive(6, 42, 0.7, 1.0).unwrap();
        let b = gen_two_additive(6, 42, 0.7, 1.0).unwrap();
        assert_eq!(a, b);
        assert!(gen_two_additive(1, 0, 0.5, 0.5).is_err());
    }

    #[test]
    fn strong_mode_with_gaussian_is_rejected() {
        let cfg = InstanceGenConfig {
            functions: vec!["gaussian".into()],
            mode: ValidationMode::Strong,
            ..InstanceGenConfig::default()
        };
        assert!(matches!(gen_problem(&cfg), Err(Error::Generation(_))));
    }

    #[test]
    fn single_category_puts_everything_in_it() {
        let cfg = InstanceGenConfig {
            n_categories: 1,
            seed: 9,
            ..InstanceGenConfig::default()
        };
        let problem = gen_problem(&cfg).unwrap();
        assert_eq!(problem.profiles().profiles().len(), 2);
        let result = sort_all(&problem, &SortOptions::default()).unwrap();
        for alt in &result.alternatives {
            assert!(alt.categories.iter().all(|c| c.index() == 1));
        }
    }

    #[test]
    fn every_mode_validates() {
        for mode in [
            ValidationMode::Weak,
            ValidationMode::Strict,
            ValidationMode::Strong,
        ] {
            for seed in 0..20 {
                let cfg = InstanceGenConfig {
                    seed,
                    mode,
                    ..InstanceGenConfig::default()
                };
                let inst = generate_instance(&cfg).unwrap();
                assert_eq!(inst.problem.mode(), mode);
            }
        }
    }
}

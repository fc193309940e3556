//! Scenario configuration: defaults, optional TOML file, command-line
//! overrides. The resolved configuration plus the seed determine every
//! number a scenario emits.

use std::path::PathBuf;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum Scenario {
    Axioms,
    Extend,
    MoyalCheck,
    Quantize,
    Representation,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Axioms => "axioms",
            Scenario::Extend => "extend",
            Scenario::MoyalCheck => "moyal-check",
            Scenario::Quantize => "quantize",
            Scenario::Representation => "representation",
        }
    }
}

/// Fully resolved scenario configuration. The output path is delivery
/// information, not semantics, so it is excluded from the report echo.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub model: String,
    pub family: Option<String>,
    pub dim: usize,
    pub ladder: Vec<usize>,
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
    pub mutate: Option<String>,
    pub element: Option<PathBuf>,
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
}

/// The optional structured-text form; every field may be omitted and is
/// then filled from flags or defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: Option<Scenario>,
    pub model: Option<String>,
    pub family: Option<String>,
    pub dim: Option<usize>,
    pub ladder: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub mutate: Option<String>,
    pub element: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default)]
pub struct Overrides {
    pub model: Option<String>,
    pub family: Option<String>,
    pub dim: Option<usize>,
    pub ladder: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub mutate: Option<String>,
    pub element: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn resolve(
    scenario: Scenario,
    file: Option<ConfigFile>,
    flags: Overrides,
) -> anyhow::Result<ScenarioConfig> {
    let file = file.unwrap_or_default();
    if let Some(s) = file.scenario {
        if s != scenario {
            bail!("config file names scenario `{}`, command line says `{}`", s.name(), scenario.name());
        }
    }
    let model = flags
        .model
        .or(file.model)
        .unwrap_or_else(|| default_model(scenario).to_string());
    let dim = flags.dim.or(file.dim).unwrap_or(default_dim(scenario, &model));
    let ladder = flags
        .ladder
        .or(file.ladder)
        .unwrap_or_else(|| default_ladder(scenario));
    let config = ScenarioConfig {
        scenario,
        family: flags.family.or(file.family).or(default_family(scenario, &model)),
        model,
        dim,
        ladder,
        seed: flags.seed.or(file.seed).unwrap_or(7),
        tol: flags.tol.or(file.tol).unwrap_or(1e-10),
        samples: flags.samples.or(file.samples).unwrap_or(default_samples(scenario)),
        mutate: flags.mutate.or(file.mutate),
        element: flags.element.or(file.element),
        out: flags.out.or(file.out),
    };
    if !(config.tol > 0.0) {
        bail!("tolerance must be positive");
    }
    if config.dim == 0 {
        bail!("dimension must be at least 1");
    }
    Ok(config)
}

fn default_model(scenario: Scenario) -> &'static str {
    match scenario {
        Scenario::Axioms | Scenario::Extend => "matrix",
        Scenario::MoyalCheck => "matrix",
        Scenario::Quantize | Scenario::Representation => "transported",
    }
}

fn default_dim(scenario: Scenario, model: &str) -> usize {
    match (scenario, model) {
        (_, "pointwise") => 64,
        (Scenario::MoyalCheck, _) => 12,
        _ => 16,
    }
}

fn default_ladder(scenario: Scenario) -> Vec<usize> {
    match scenario {
        Scenario::Representation => vec![4, 8, 16],
        _ => vec![16, 32, 64],
    }
}

fn default_family(scenario: Scenario, model: &str) -> Option<String> {
    if model == "transported" || scenario == Scenario::Quantize {
        Some("weyl-heisenberg:4".to_string())
    } else {
        None
    }
}

fn default_samples(scenario: Scenario) -> usize {
    match scenario {
        Scenario::Axioms => 200,
        Scenario::Extend => 100,
        Scenario::Quantize => 100,
        Scenario::Representation => 4,
        Scenario::MoyalCheck => 1,
    }
}

pub fn load_config_file(path: &PathBuf) -> anyhow::Result<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("malformed config file {}", path.display()))
}

pub fn parse_ladder(spec: &str) -> anyhow::Result<Vec<usize>> {
    let parts: Result<Vec<usize>, _> = spec.split(',').map(|p| p.trim().parse()).collect();
    let ladder = parts.with_context(|| format!("cannot parse ladder `{spec}`"))?;
    if ladder.is_empty() {
        bail!("ladder must be nonempty");
    }
    Ok(ladder)
}

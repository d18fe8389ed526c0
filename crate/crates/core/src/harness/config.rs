//! TOML experiment files.
//!
//! ```toml
//! name = "rr-table3"
//! problem = "royal-road-s1"
//! population_size = 40
//! generations = 200
//! crossover_rate = 0.7
//! mutation_rate = 0.005
//! editing_mode = "lamarckian"   # or "ontogenic"
//! runs = 50
//! base_seed = 1000
//! workers = 0                   # 0 = one per core
//! output_dir = "out/rr-table3"
//! tracked_schemata = ["11111***********************************"]
//!
//! [[editor]]
//! pattern = "1110"
//! concentration = 0.0635
//! function = "delete 4"
//! ```
//!
//! Editors are applied in file order. A file without `[[editor]]` blocks runs
//! the plain GA. Manifests written by the runner use the same format plus a
//! `run_seeds` list, and load back to the same configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::presets::preset;
use crate::editing::{EditFunction, Editor, EditorFamily};
use crate::engine::{EditingMode, GaParams};
use crate::error::GaeError;
use crate::genome::BitString;
use crate::problems::{ProblemId, Schema};
use crate::rng::derive_run_seed;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Malformed(String),
    #[error("unknown problem id {0:?} (expected royal-road-s1, optimal-control or michalewicz-epistatic)")]
    UnknownProblem(String),
    #[error("unknown preset {0:?} and no such file")]
    UnknownPreset(String),
    #[error("editor {editor}: concentration {value} outside [0, 1]")]
    ConcentrationOutOfRange { editor: usize, value: f64 },
    #[error(
        "editor {editor}: pattern length {pattern} must be below chromosome length {chromosome}"
    )]
    PatternTooLong {
        editor: usize,
        pattern: usize,
        chromosome: usize,
    },
    #[error("editor {editor}: {message}")]
    InvalidEditor { editor: usize, message: String },
    #[error("invalid GA parameters: {0}")]
    InvalidParams(GaeError),
    #[error("tracked schema {index}: {message}")]
    InvalidSchema { index: usize, message: String },
}

/// A fully validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub problem: ProblemId,
    pub params: GaParams,
    pub editors: EditorFamily,
    pub runs: usize,
    pub base_seed: u64,
    /// Parallel runs; 0 uses every available core.
    pub workers: usize,
    pub output_dir: PathBuf,
    /// Schema templates (`0`, `1`, `*`) whose densities are recorded.
    pub tracked_schemata: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    name: String,
    problem: String,
    population_size: usize,
    generations: usize,
    crossover_rate: f64,
    mutation_rate: f64,
    #[serde(default)]
    editing_mode: EditingMode,
    runs: usize,
    #[serde(default)]
    base_seed: u64,
    #[serde(default)]
    workers: usize,
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    tracked_schemata: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    run_seeds: Option<Vec<u64>>,
    #[serde(default, rename = "editor", skip_serializing_if = "Vec::is_empty")]
    editors: Vec<RawEditor>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEditor {
    pattern: String,
    concentration: f64,
    function: String,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    pub fn chromosome_length(&self) -> usize {
        self.problem.chromosome_length()
    }

    pub fn run_seeds(&self) -> Vec<u64> {
        (0..self.runs as u64)
            .map(|i| derive_run_seed(self.base_seed, i))
            .collect()
    }

    pub fn schemata(&self) -> Vec<Schema> {
        self.tracked_schemata
            .iter()
            .map(|t| Schema::from_template(t, 0.0).expect("validated at load"))
            .collect()
    }

    /// Re-checks every invariant; used after programmatic edits.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params.validate().map_err(ConfigError::InvalidParams)?;
        if self.runs == 0 {
            return Err(ConfigError::Malformed("runs must be at least 1".into()));
        }
        let n = self.chromosome_length();
        for (i, e) in self.editors.editors.iter().enumerate() {
            if !(0.0..=1.0).contains(&e.concentration) {
                return Err(ConfigError::ConcentrationOutOfRange {
                    editor: i + 1,
                    value: e.concentration,
                });
            }
            if e.len() >= n {
                return Err(ConfigError::PatternTooLong {
                    editor: i + 1,
                    pattern: e.len(),
                    chromosome: n,
                });
            }
        }
        for (index, t) in self.tracked_schemata.iter().enumerate() {
            let message = if t.chars().count() != n {
                format!(
                    "template length {} differs from chromosome length {n}",
                    t.chars().count()
                )
            } else if let Err(e) = Schema::from_template(t, 0.0) {
                e.to_string()
            } else {
                continue;
            };
            return Err(ConfigError::InvalidSchema { index, message });
        }
        Ok(())
    }

    /// Manifest text: this configuration plus the derived run seeds.
    pub fn to_manifest(&self) -> String {
        let mut raw = self.to_raw();
        raw.run_seeds = Some(self.run_seeds());
        toml::to_string(&raw).expect("config serializes")
    }

    /// Configuration text without run seeds.
    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_raw()).expect("config serializes")
    }

    fn to_raw(&self) -> RawConfig {
        RawConfig {
            name: self.name.clone(),
            problem: self.problem.as_str().to_string(),
            population_size: self.params.population_size,
            generations: self.params.generations,
            crossover_rate: self.params.crossover_rate,
            mutation_rate: self.params.mutation_rate,
            editing_mode: self.params.editing_mode,
            runs: self.runs,
            base_seed: self.base_seed,
            workers: self.workers,
            output_dir: self.output_dir.clone(),
            tracked_schemata: self.tracked_schemata.clone(),
            run_seeds: None,
            editors: self
                .editors
                .editors
                .iter()
                .map(|e| RawEditor {
                    pattern: e.pattern.to_string(),
                    concentration: e.concentration,
                    function: e.function.to_string(),
                })
                .collect(),
        }
    }

    fn from_raw(raw: RawConfig) -> Result<Self, ConfigError> {
        let problem: ProblemId = raw.problem.parse().map_err(ConfigError::UnknownProblem)?;
        let mut editors = Vec::with_capacity(raw.editors.len());
        for (i, e) in raw.editors.into_iter().enumerate() {
            let editor = i + 1;
            if !(0.0..=1.0).contains(&e.concentration) {
                return Err(ConfigError::ConcentrationOutOfRange {
                    editor,
                    value: e.concentration,
                });
            }
            let pattern: BitString =
                e.pattern
                    .parse()
                    .map_err(|err: GaeError| ConfigError::InvalidEditor {
                        editor,
                        message: err.to_string(),
                    })?;
            let function: EditFunction = e
                .function
                .parse()
                .map_err(|message| ConfigError::InvalidEditor { editor, message })?;
            let built = Editor::new(pattern, e.concentration, function).map_err(|err| {
                ConfigError::InvalidEditor {
                    editor,
                    message: err.to_string(),
                }
            })?;
            editors.push(built);
        }
        let config = ExperimentConfig {
            name: raw.name,
            problem,
            params: GaParams {
                population_size: raw.population_size,
                generations: raw.generations,
                crossover_rate: raw.crossover_rate,
                mutation_rate: raw.mutation_rate,
                editing_mode: raw.editing_mode,
            },
            editors: EditorFamily::new(editors),
            runs: raw.runs,
            base_seed: raw.base_seed,
            workers: raw.workers,
            output_dir: raw.output_dir,
            tracked_schemata: raw.tracked_schemata,
        };
        config.validate()?;
        if let Some(seeds) = raw.run_seeds {
            if seeds != config.run_seeds() {
                return Err(ConfigError::Malformed(
                    "run_seeds do not match base_seed and runs".into(),
                ));
            }
        }
        Ok(config)
    }
}

/// Parses and validates configuration text.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Malformed(e.to_string()))?;
    ExperimentConfig::from_raw(raw)
}

/// Loads a preset by id, or else a config file by path.
pub fn load_config(source: &str) -> Result<ExperimentConfig, ConfigError> {
    if let Some(p) = preset(source) {
        return Ok(p.config);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(ConfigError::UnknownPreset(source.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

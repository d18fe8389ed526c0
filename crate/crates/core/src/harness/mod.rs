//! Experiment configuration, named presets and batch execution.

mod config;
mod presets;
mod runner;

pub use config::{load_config, parse_config, ConfigError, ExperimentConfig};
pub use presets::{
    generate_editor_family, list_presets, preset, EditorGenSpec, Preset, DEFAULT_BASE_SEED,
    RR_10EDITORS_SPEC, RR_2EDITORS_SPEC, RR_LEN10_SPEC, RR_LEN2_SPEC,
};
pub use runner::{
    execute_runs, run_experiment, write_artifacts, ExperimentArtifacts, AGGREGATE_FILE,
    MANIFEST_FILE, RUNS_FILE,
};

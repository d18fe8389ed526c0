//! Genetic algorithm with stochastic genotype editing.
//!
//! Genotypes pass through a family of short pattern-matching editors before
//! they are evaluated. The crate provides the editing layer, a generational GA
//! built around it, three benchmark problems, population metrics and an
//! experiment harness with named presets.

pub mod editing;
pub mod engine;
mod error;
pub mod genome;
pub mod harness;
pub mod metrics;
pub mod problems;
pub mod rng;

pub use editing::{
    apply_edit, find_match, transcribe, EditEvent, EditFunction, Editor, EditorFamily,
};
pub use engine::{
    binary_tournament, evaluate_population, next_generation, one_point_crossover, point_mutation,
    run_ga, run_ga_tracked, EditingMode, GaParams,
};
pub use error::{GaeError, Result};
pub use genome::{random_bitstring, BitString, Individual, Population};
pub use metrics::{
    aggregate_runs, diversity, editing_frequency_summary, schema_density, AggregateSeries,
    GenerationRecord, Metric, RunTrace,
};
pub use problems::{FitnessProblem, ProblemId, Schema};
pub use rng::{derive_run_seed, RandomSource};

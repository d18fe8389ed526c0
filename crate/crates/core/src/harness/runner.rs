//! Executes an experiment and writes its CSV and manifest artifacts.
//!
//! `aggregate.csv` has one row per generation with columns
//! `generation, mean_best_so_far, ci95, mean_edit_count, mean_diversity`
//! followed by `density_s1 ..` for each tracked schema. `ci95` is left empty
//! for single-run experiments. `runs.csv` has one row per run.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{ConfigError, ExperimentConfig};
use crate::engine::run_ga_tracked;
use crate::error::GaeError;
use crate::metrics::{aggregate_runs, mean_series, Metric, RunTrace};

pub const AGGREGATE_FILE: &str = "aggregate.csv";
pub const RUNS_FILE: &str = "runs.csv";
pub const MANIFEST_FILE: &str = "manifest.toml";

#[derive(Debug)]
pub struct ExperimentArtifacts {
    pub traces: Vec<RunTrace>,
    pub aggregate_csv: PathBuf,
    pub runs_csv: PathBuf,
    pub manifest: PathBuf,
}

/// Runs every seeded replicate; results are ordered by run index regardless
/// of how runs were scheduled.
pub fn execute_runs(config: &ExperimentConfig) -> Result<Vec<RunTrace>, GaeError> {
    let problem = config.problem.build();
    let schemata = config.schemata();
    let seeds = config.run_seeds();
    let run = |seed: &u64| {
        run_ga_tracked(
            problem.as_ref(),
            &config.params,
            &config.editors,
            &schemata,
            *seed,
        )
    };
    if config.workers == 1 {
        return seeds.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .expect("thread pool");
    pool.install(|| seeds.par_iter().map(run).collect())
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ConfigError + '_ {
    move |source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub(crate) fn aggregate_csv(config: &ExperimentConfig, traces: &[RunTrace]) -> String {
    let best = mean_series(traces, Metric::BestSoFar).expect("equal-length traces");
    let ci = if traces.len() >= 2 {
        Some(
            aggregate_runs(traces, Metric::BestSoFar)
                .expect("equal-length traces")
                .ci95,
        )
    } else {
        None
    };
    let edits = mean_series(traces, Metric::EditCount).expect("equal-length traces");
    let div = mean_series(traces, Metric::Diversity).expect("equal-length traces");
    let densities: Vec<Vec<f64>> = (0..config.tracked_schemata.len())
        .map(|i| mean_series(traces, Metric::SchemaDensity(i)).expect("equal-length traces"))
        .collect();

    let mut out = String::from("generation,mean_best_so_far,ci95,mean_edit_count,mean_diversity");
    for i in 0..densities.len() {
        write!(out, ",density_s{}", i + 1).unwrap();
    }
    out.push('\n');
    for g in 0..best.len() {
        let ci = ci.as_ref().map(|c| c[g].to_string()).unwrap_or_default();
        write!(out, "{g},{},{ci},{},{}", best[g], edits[g], div[g]).unwrap();
        for d in &densities {
            write!(out, ",{}", d[g]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub(crate) fn runs_csv(traces: &[RunTrace]) -> String {
    let mut out =
        String::from("run,seed,final_best_so_far,total_edits,best_genotype,best_transcript\n");
    for (i, t) in traces.iter().enumerate() {
        writeln!(
            out,
            "{i},{},{},{},{},{}",
            t.seed,
            t.final_best_so_far(),
            t.total_edits(),
            t.best_genotype,
            t.best_transcript
        )
        .unwrap();
    }
    out
}

/// Writes the aggregate CSV, run summary CSV and manifest into `dir`.
pub fn write_artifacts(
    config: &ExperimentConfig,
    traces: &[RunTrace],
    dir: &Path,
) -> Result<(PathBuf, PathBuf, PathBuf), ConfigError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let aggregate = dir.join(AGGREGATE_FILE);
    let runs = dir.join(RUNS_FILE);
    let manifest = dir.join(MANIFEST_FILE);
    fs::write(&aggregate, aggregate_csv(config, traces)).map_err(io_err(&aggregate))?;
    fs::write(&runs, runs_csv(traces)).map_err(io_err(&runs))?;
    fs::write(&manifest, config.to_manifest()).map_err(io_err(&manifest))?;
    Ok((aggregate, runs, manifest))
}

/// Runs `config` and writes its artifacts to `config.output_dir`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentArtifacts, ConfigError> {
    config.validate()?;
    let traces = execute_runs(config).map_err(ConfigError::InvalidParams)?;
    let (aggregate_csv, runs_csv, manifest) = write_artifacts(config, &traces, &config.output_dir)?;
    Ok(ExperimentArtifacts {
        traces,
        aggregate_csv,
        runs_csv,
        manifest,
    })
}

//! `gae`: run, list and validate editing-GA experiments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gae_core::harness::{list_presets, load_config, run_experiment, ConfigError, ExperimentConfig};
use gae_core::metrics::{aggregate_runs, Metric};
use gae_core::{EditingMode, EditorFamily};

#[derive(Parser)]
#[command(
    name = "gae",
    version,
    about = "Genetic algorithm with stochastic genotype editing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a TOML experiment file and write CSVs plus a manifest.
    Run {
        /// Preset id (see `gae list`) or path to a config file.
        source: String,
        /// Base seed; run i uses base + i.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        generations: Option<usize>,
        /// Output directory for aggregate.csv, runs.csv and manifest.toml.
        #[arg(long)]
        out: Option<PathBuf>,
        /// `lamarckian` or `ontogenic`.
        #[arg(long)]
        editing_mode: Option<EditingMode>,
        /// Drop every editor and run the plain GA.
        #[arg(long)]
        no_editors: bool,
        /// Parallel runs (0 = all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// List presets.
    List,
    /// Check a config file (or preset) and echo what would run.
    Validate { source: String },
}

/// Process exit code for each configuration error class.
fn exit_code(err: &ConfigError) -> u8 {
    match err {
        ConfigError::Malformed(_) | ConfigError::UnknownPreset(_) => 3,
        ConfigError::UnknownProblem(_) => 4,
        ConfigError::ConcentrationOutOfRange { .. } => 5,
        ConfigError::PatternTooLong { .. } => 6,
        ConfigError::InvalidEditor { .. } => 7,
        ConfigError::InvalidParams(_) | ConfigError::InvalidSchema { .. } => 8,
        ConfigError::Io { .. } => 9,
    }
}

fn describe(config: &ExperimentConfig) -> String {
    let p = &config.params;
    let mut out = format!(
        "experiment {}\n  problem          {} ({} bits)\n  population       {}\n  generations      {}\n  crossover rate   {}\n  mutation rate    {}\n  editing mode     {}\n  runs             {}\n  base seed        {}\n  output           {}\n",
        if config.name.is_empty() { "<unnamed>" } else { &config.name },
        config.problem,
        config.chromosome_length(),
        p.population_size,
        p.generations,
        p.crossover_rate,
        p.mutation_rate,
        p.editing_mode,
        config.runs,
        config.base_seed,
        config.output_dir.display(),
    );
    if config.editors.is_empty() {
        out.push_str("  editors          none (plain GA)\n");
    } else {
        out.push_str("  editors\n    #  pattern      concentration  function\n");
        for (i, e) in config.editors.editors.iter().enumerate() {
            out.push_str(&format!(
                "    {:<2} {:<12} {:<14} {}\n",
                i + 1,
                e.pattern.to_string(),
                e.concentration,
                e.function
            ));
        }
    }
    if !config.tracked_schemata.is_empty() {
        out.push_str(&format!(
            "  tracked schemata {}\n",
            config.tracked_schemata.len()
        ));
    }
    out
}

fn run(cli: Cli) -> Result<(), ConfigError> {
    match cli.command {
        Command::List => {
            for p in list_presets() {
                println!("{:<22} {}", p.id, p.description);
            }
        }
        Command::Validate { source } => {
            let config = load_config(&source)?;
            print!("{}", describe(&config));
            println!("ok");
        }
        Command::Run {
            source,
            seed,
            runs,
            generations,
            out,
            editing_mode,
            no_editors,
            workers,
        } => {
            let mut config = load_config(&source)?;
            if let Some(seed) = seed {
                config.base_seed = seed;
            }
            if let Some(runs) = runs {
                config.runs = runs;
            }
            if let Some(g) = generations {
                config.params.generations = g;
            }
            if let Some(out) = out {
                config.output_dir = out;
            }
            if let Some(mode) = editing_mode {
                config.params.editing_mode = mode;
            }
            if no_editors {
                config.editors = EditorFamily::empty();
            }
            if let Some(w) = workers {
                config.workers = w;
            }
            config.validate()?;
            print!("{}", describe(&config));

            let artifacts = run_experiment(&config)?;
            let finals: Vec<f64> = artifacts
                .traces
                .iter()
                .map(|t| t.final_best_so_far())
                .collect();
            let mean = finals.iter().sum::<f64>() / finals.len() as f64;
            match aggregate_runs(&artifacts.traces, Metric::BestSoFar) {
                Ok(agg) => println!(
                    "final mean best-so-far {mean:.4} ± {:.4} (95% CI)",
                    agg.ci95.last().unwrap()
                ),
                Err(_) => println!("final best-so-far {mean:.4}"),
            }
            if let Some(opt) = config.problem.build().optimum_fitness() {
                let hits = finals.iter().filter(|&&f| f >= opt).count();
                println!("runs reaching optimum {opt}: {hits}/{}", finals.len());
            }
            println!("wrote {}", artifacts.aggregate_csv.display());
            println!("wrote {}", artifacts.runs_csv.display());
            println!("wrote {}", artifacts.manifest.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

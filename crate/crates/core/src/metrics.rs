//! Per-generation measurements and cross-run aggregation.

use serde::{Deserialize, Serialize};

use crate::error::{GaeError, Result};
use crate::genome::{BitString, Population};
use crate::problems::Schema;

/// z-value for a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Highest evaluated (transcript) fitness in this generation.
    pub best_fitness: f64,
    pub best_so_far: f64,
    /// Total edits applied across the population this generation.
    pub edit_count: usize,
    pub diversity: f64,
    /// One density per tracked schema, in tracking order.
    pub schema_densities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub seed: u64,
    pub generations: Vec<GenerationRecord>,
    /// Genotype whose transcript produced the best-so-far fitness.
    pub best_genotype: BitString,
    pub best_transcript: BitString,
    pub best_fitness: f64,
}

impl RunTrace {
    pub fn len(&self) -> usize {
        self.generations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generations.is_empty()
    }

    pub fn final_best_so_far(&self) -> f64 {
        self.generations.last().map_or(f64::NAN, |r| r.best_so_far)
    }

    pub fn total_edits(&self) -> usize {
        self.generations.iter().map(|r| r.edit_count).sum()
    }
}

/// Bitwise allele diversity of a set of chromosomes.
///
/// For each locus, `D_i = 1 - 2 |0.5 - p_i|` where `p_i` is the share of ones;
/// the result is the mean of `D_i` over loci. 0 when every locus is fixed,
/// 1 when every locus is split evenly.
pub fn diversity_of(genotypes: &[BitString]) -> Result<f64> {
    let first = genotypes.first().ok_or(GaeError::EmptyPopulation)?;
    let n = first.len();
    let mut ones = vec![0usize; n];
    for g in genotypes {
        if g.len() != n {
            return Err(GaeError::LengthMismatch {
                expected: n,
                actual: g.len(),
            });
        }
        for (c, &b) in ones.iter_mut().zip(g.bits()) {
            *c += b as usize;
        }
    }
    if n == 0 {
        return Ok(0.0);
    }
    let l = genotypes.len() as f64;
    let total: f64 = ones
        .iter()
        .map(|&c| 1.0 - 2.0 * (0.5 - c as f64 / l).abs())
        .sum();
    Ok(total / n as f64)
}

/// Diversity of the population's genotypes (not transcripts).
pub fn diversity(pop: &Population) -> Result<f64> {
    let genotypes: Vec<BitString> = pop.members.iter().map(|m| m.genotype.clone()).collect();
    diversity_of(&genotypes)
}

/// Fraction of genotypes that are instances of `schema`.
pub fn schema_density(pop: &Population, schema: &Schema) -> f64 {
    if pop.is_empty() {
        return 0.0;
    }
    let hits = pop
        .members
        .iter()
        .filter(|m| schema.matches(&m.genotype))
        .count();
    hits as f64 / pop.len() as f64
}

/// A per-generation quantity that can be averaged across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    BestFitness,
    BestSoFar,
    EditCount,
    Diversity,
    SchemaDensity(usize),
}

impl Metric {
    pub fn of(self, r: &GenerationRecord) -> f64 {
        match self {
            Metric::BestFitness => r.best_fitness,
            Metric::BestSoFar => r.best_so_far,
            Metric::EditCount => r.edit_count as f64,
            Metric::Diversity => r.diversity,
            Metric::SchemaDensity(i) => r.schema_densities.get(i).copied().unwrap_or(f64::NAN),
        }
    }
}

/// Per-generation mean, sample standard deviation and 95% CI half-width.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateSeries {
    pub runs: usize,
    pub mean: Vec<f64>,
    pub std_dev: Vec<f64>,
    pub ci95: Vec<f64>,
}

impl AggregateSeries {
    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }
}

fn check_equal_lengths(traces: &[RunTrace]) -> Result<usize> {
    let g = traces.first().map_or(0, RunTrace::len);
    for t in traces {
        if t.len() != g {
            return Err(GaeError::TraceLengthMismatch(g, t.len()));
        }
    }
    Ok(g)
}

/// Mean of `metric` at every generation; defined for any nonempty set of runs.
pub fn mean_series(traces: &[RunTrace], metric: Metric) -> Result<Vec<f64>> {
    if traces.is_empty() {
        return Err(GaeError::TooFewRuns { got: 0, min: 1 });
    }
    let g = check_equal_lengths(traces)?;
    let r = traces.len() as f64;
    Ok((0..g)
        .map(|i| {
            traces
                .iter()
                .map(|t| metric.of(&t.generations[i]))
                .sum::<f64>()
                / r
        })
        .collect())
}

/// Aggregates `metric` across at least two runs. The CI half-width uses the
/// normal approximation `1.96 s / sqrt(R)`.
pub fn aggregate_runs(traces: &[RunTrace], metric: Metric) -> Result<AggregateSeries> {
    if traces.len() < 2 {
        return Err(GaeError::TooFewRuns {
            got: traces.len(),
            min: 2,
        });
    }
    let mean = mean_series(traces, metric)?;
    let r = traces.len() as f64;
    let std_dev: Vec<f64> = mean
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let ss: f64 = traces
                .iter()
                .map(|t| (metric.of(&t.generations[i]) - m).powi(2))
                .sum();
            (ss / (r - 1.0)).sqrt()
        })
        .collect();
    let ci95 = std_dev.iter().map(|s| Z95 * s / r.sqrt()).collect();
    Ok(AggregateSeries {
        runs: traces.len(),
        mean,
        std_dev,
        ci95,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EditingFrequencySummary {
    pub mean_per_generation: Vec<f64>,
    /// Mean edit count over the first tenth of the generations.
    pub first_decile_mean: f64,
    /// Mean edit count over the last tenth of the generations.
    pub last_decile_mean: f64,
}

pub fn editing_frequency_summary(traces: &[RunTrace]) -> Result<EditingFrequencySummary> {
    let mean_per_generation = mean_series(traces, Metric::EditCount)?;
    let g = mean_per_generation.len();
    let window = g.div_ceil(10).max(1).min(g.max(1));
    let avg = |xs: &[f64]| {
        if xs.is_empty() {
            0.0
        } else {
            xs.iter().sum::<f64>() / xs.len() as f64
        }
    };
    Ok(EditingFrequencySummary {
        first_decile_mean: avg(&mean_per_generation[..window.min(g)]),
        last_decile_mean: avg(&mean_per_generation[g.saturating_sub(window)..]),
        mean_per_generation,
    })
}

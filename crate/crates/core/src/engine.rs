//! Generational GA with an optional editing layer between genotype and
//! evaluation.
//!
//! Every generation each genotype is transcribed through the editor family,
//! the transcript is evaluated, and the next population is bred by binary
//! tournament, one-point crossover and point mutation. There is no elitism;
//! the best individual seen so far is tracked as a statistic only.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::editing::{transcribe, EditorFamily};
use crate::error::{GaeError, Result};
use crate::genome::{BitString, Individual, Population};
use crate::metrics::{diversity, schema_density, GenerationRecord, RunTrace};
use crate::problems::{FitnessProblem, Schema};
use crate::rng::RandomSource;

/// What happens to the genotype after it has been edited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditingMode {
    /// Only the transcript is edited; offspring inherit the unedited genotype.
    Ontogenic,
    /// The edited chromosome replaces the genotype and is inherited.
    #[default]
    Lamarckian,
}

impl fmt::Display for EditingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EditingMode::Ontogenic => "ontogenic",
            EditingMode::Lamarckian => "lamarckian",
        })
    }
}

impl FromStr for EditingMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ontogenic" => Ok(EditingMode::Ontogenic),
            "lamarckian" => Ok(EditingMode::Lamarckian),
            other => Err(format!("unknown editing mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    #[serde(default)]
    pub editing_mode: EditingMode,
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(GaeError::PopulationTooSmall(self.population_size));
        }
        if self.generations == 0 {
            return Err(GaeError::NoGenerations);
        }
        for (name, value) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GaeError::RateOutOfRange { name, value });
            }
        }
        Ok(())
    }
}

/// Tournament over a fitness slice; see [`binary_tournament`].
pub fn tournament_index(fitness: &[f64], rng: &mut RandomSource) -> Result<usize> {
    if fitness.is_empty() {
        return Err(GaeError::EmptyPopulation);
    }
    let a = rng.below(fitness.len());
    let b = rng.below(fitness.len());
    Ok(if fitness[a] > fitness[b] {
        a
    } else if fitness[b] > fitness[a] {
        b
    } else if rng.coin() {
        a
    } else {
        b
    })
}

/// Draws two members uniformly with replacement and returns the fitter one;
/// exact ties are settled by a fair coin.
pub fn binary_tournament(pop: &Population, rng: &mut RandomSource) -> Result<usize> {
    tournament_index(&pop.fitnesses(), rng)
}

/// Exchanges the suffixes of `a` and `b` from position `cut`.
pub fn crossover_at(a: &BitString, b: &BitString, cut: usize) -> (BitString, BitString) {
    let (x, y) = (a.bits(), b.bits());
    let mut c = x[..cut].to_vec();
    c.extend_from_slice(&y[cut..]);
    let mut d = y[..cut].to_vec();
    d.extend_from_slice(&x[cut..]);
    (BitString::from_raw(c), BitString::from_raw(d))
}

/// With probability `p_c`, cuts both parents at a uniform point in `1..n` and
/// swaps the tails; otherwise returns copies.
pub fn one_point_crossover(
    a: &BitString,
    b: &BitString,
    p_c: f64,
    rng: &mut RandomSource,
) -> Result<(BitString, BitString)> {
    if a.len() != b.len() {
        return Err(GaeError::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(GaeError::LengthTooShort {
            len: a.len(),
            min: 2,
        });
    }
    if rng.chance(p_c) {
        let cut = 1 + rng.below(a.len() - 1);
        Ok(crossover_at(a, b, cut))
    } else {
        Ok((a.clone(), b.clone()))
    }
}

/// Flips each allele independently with probability `p_m`.
pub fn point_mutation(s: &BitString, p_m: f64, rng: &mut RandomSource) -> BitString {
    let mut out = s.clone();
    for b in out.bits_mut() {
        if rng.chance(p_m) {
            *b ^= 1;
        }
    }
    out
}

/// Transcribes and evaluates every member, returning the generation's total
/// edit count.
pub fn evaluate_population(
    pop: &mut Population,
    problem: &dyn FitnessProblem,
    family: &EditorFamily,
    mode: EditingMode,
    rng: &mut RandomSource,
) -> usize {
    let mut total = 0;
    for m in &mut pop.members {
        let (transcript, events) = transcribe(&m.genotype, family, rng);
        m.fitness = problem.evaluate(&transcript);
        m.edits_this_generation = events.len();
        total += events.len();
        if mode == EditingMode::Lamarckian {
            m.genotype = transcript.clone();
        }
        m.last_transcript = transcript;
    }
    total
}

/// Breeds a full replacement population of the same size.
pub fn next_generation(
    pop: &Population,
    params: &GaParams,
    rng: &mut RandomSource,
) -> Result<Population> {
    let l = pop.len();
    let fitness = pop.fitnesses();
    let mut children = Vec::with_capacity(l + 1);
    while children.len() < l {
        let i = tournament_index(&fitness, rng)?;
        let j = tournament_index(&fitness, rng)?;
        let (a, b) = one_point_crossover(
            &pop.members[i].genotype,
            &pop.members[j].genotype,
            params.crossover_rate,
            rng,
        )?;
        children.push(point_mutation(&a, params.mutation_rate, rng));
        children.push(point_mutation(&b, params.mutation_rate, rng));
    }
    children.truncate(l);
    Ok(Population::new(
        children.into_iter().map(Individual::new).collect(),
    ))
}

/// Runs one seeded GA, recording one [`GenerationRecord`] per generation.
pub fn run_ga(
    problem: &dyn FitnessProblem,
    params: &GaParams,
    family: &EditorFamily,
    seed: u64,
) -> Result<RunTrace> {
    run_ga_tracked(problem, params, family, &[], seed)
}

/// [`run_ga`] that also records the density of each schema in `tracked`.
pub fn run_ga_tracked(
    problem: &dyn FitnessProblem,
    params: &GaParams,
    family: &EditorFamily,
    tracked: &[Schema],
    seed: u64,
) -> Result<RunTrace> {
    params.validate()?;
    let n = problem.chromosome_length();
    family.validate_for(n)?;

    let mut rng = RandomSource::new(seed);
    let mut pop = Population::random(params.population_size, n, &mut rng)?;
    let mut records = Vec::with_capacity(params.generations);
    let mut best: Option<Individual> = None;

    for g in 0..params.generations {
        let edit_count =
            evaluate_population(&mut pop, problem, family, params.editing_mode, &mut rng);
        let leader = &pop.members[pop.best_index().expect("population is nonempty")];
        if best.as_ref().is_none_or(|b| leader.fitness > b.fitness) {
            best = Some(leader.clone());
        }
        let best_so_far = best.as_ref().map_or(f64::NAN, |b| b.fitness);
        records.push(GenerationRecord {
            generation: g,
            best_fitness: leader.fitness,
            best_so_far,
            edit_count,
            diversity: diversity(&pop)?,
            schema_densities: tracked.iter().map(|s| schema_density(&pop, s)).collect(),
        });
        if g + 1 < params.generations {
            pop = next_generation(&pop, params, &mut rng)?;
        }
    }

    let best = best.expect("at least one generation");
    Ok(RunTrace {
        seed,
        generations: records,
        best_genotype: best.genotype,
        best_transcript: best.last_transcript,
        best_fitness: best.fitness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::editing::Editor;
    use crate::problems::RoyalRoadS1;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn evaluated(fitness: &[f64]) -> Population {
        let mut p = Population::from_genotypes(fitness.iter().map(|_| BitString::zeros(4)));
        for (m, &f) in p.members.iter_mut().zip(fitness) {
            m.fitness = f;
        }
        p
    }

    fn rr_params(generations: usize) -> GaParams {
        GaParams {
            population_size: 40,
            generations,
            crossover_rate: 0.7,
            mutation_rate: 0.005,
            editing_mode: EditingMode::Ontogenic,
        }
    }

    #[test]
    fn tournament_strict_winner() {
        // the only pairs are (0,0), (1,1) or mixed; mixed always yields 0
        let mut rng = RandomSource::new(1);
        let fit = [80.0, 10.0];
        for _ in 0..200 {
            let a = rng.clone().below(2);
            let i = tournament_index(&fit, &mut rng).unwrap();
            assert!(i == 0 || a == 1);
        }
        assert_eq!(
            tournament_index(&[], &mut rng),
            Err(GaeError::EmptyPopulation)
        );
    }

    #[test]
    fn tournament_probability_three_quarters() {
        // index 1 loses only when both contestants are index 0: P = 1 - 1/4
        let mut rng = RandomSource::new(42);
        let trials = 10_000;
        let hits = (0..trials)
            .filter(|_| tournament_index(&[0.0, 80.0], &mut rng).unwrap() == 1)
            .count();
        let f = hits as f64 / trials as f64;
        assert!((f - 0.75).abs() < 0.02, "{f}");
    }

    #[test]
    fn tournament_ties_are_fair() {
        let mut rng = RandomSource::new(9);
        let pop = evaluated(&[5.0, 5.0]);
        let trials = 10_000;
        let zero = (0..trials)
            .filter(|_| binary_tournament(&pop, &mut rng).unwrap() == 0)
            .count();
        assert!((zero as f64 / trials as f64 - 0.5).abs() < 0.02);
    }

    #[test]
    fn unique_maximum_selection_rate() {
        // P(select the unique max) = 1 - ((l-1)/l)^2 = (2l-1)/l^2
        let l = 10;
        let mut fit = vec![1.0; l];
        fit[3] = 2.0;
        let mut rng = RandomSource::new(3);
        let trials = 40_000;
        let hits = (0..trials)
            .filter(|_| tournament_index(&fit, &mut rng).unwrap() == 3)
            .count();
        let expected = (2 * l - 1) as f64 / (l * l) as f64;
        assert!((hits as f64 / trials as f64 - expected).abs() < 0.01);
        assert!(expected >= 1.0 / l as f64);
    }

    #[test]
    fn crossover_cases() {
        assert_eq!(
            crossover_at(&bs("0000"), &bs("1111"), 2),
            (bs("0011"), bs("1100"))
        );
        let mut rng = RandomSource::new(0);
        let (a, b) = (bs("010101"), bs("111000"));
        assert_eq!(
            one_point_crossover(&a, &b, 0.0, &mut rng).unwrap(),
            (a.clone(), b.clone())
        );
        for _ in 0..50 {
            let (c, d) = one_point_crossover(&a, &a, 1.0, &mut rng).unwrap();
            assert_eq!((c, d), (a.clone(), a.clone()));
            let (c, d) = one_point_crossover(&a, &b, 1.0, &mut rng).unwrap();
            // a real cut keeps the first allele and swaps the last
            assert_eq!((c.get(0), d.get(0)), (a.get(0), b.get(0)));
            assert_eq!((c.get(5), d.get(5)), (b.get(5), a.get(5)));
        }
        assert!(one_point_crossover(&a, &bs("01"), 0.5, &mut rng).is_err());
    }

    #[test]
    fn mutation_extremes_and_mean() {
        let mut rng = RandomSource::new(6);
        let s = bs("0110100");
        assert_eq!(point_mutation(&s, 0.0, &mut rng), s);
        assert_eq!(point_mutation(&s, 1.0, &mut rng), s.complement());

        let z = BitString::zeros(40);
        let trials = 100_000;
        let flips: usize = (0..trials)
            .map(|_| point_mutation(&z, 0.005, &mut rng).count_ones())
            .sum();
        let mean = flips as f64 / trials as f64;
        assert!((mean - 0.2).abs() < 0.02, "{mean}");
    }

    #[test]
    fn evaluation_without_editors_scores_genotype() {
        let mut pop = Population::from_genotypes(vec![BitString::ones(40), BitString::zeros(40)]);
        let edits = evaluate_population(
            &mut pop,
            &RoyalRoadS1,
            &EditorFamily::empty(),
            EditingMode::Ontogenic,
            &mut RandomSource::new(0),
        );
        assert_eq!(edits, 0);
        assert_eq!(pop.fitnesses(), vec![80.0, 0.0]);
        assert!(pop.members.iter().all(|m| m.genotype == m.last_transcript));
    }

    #[test]
    fn lamarckian_writes_back() {
        let fam = EditorFamily::new(vec![Editor::parse("0", 1.0, "insert 3").unwrap()]);
        let g = BitString::zeros(40);
        for mode in [EditingMode::Ontogenic, EditingMode::Lamarckian] {
            let mut pop = Population::from_genotypes(vec![g.clone(); 40]);
            let edits = evaluate_population(
                &mut pop,
                &RoyalRoadS1,
                &fam,
                mode,
                &mut RandomSource::new(1),
            );
            assert_eq!(edits, 40);
            for m in &pop.members {
                let expected = if mode == EditingMode::Lamarckian {
                    &m.last_transcript
                } else {
                    &g
                };
                assert_eq!(&m.genotype, expected);
                assert_eq!(m.fitness, RoyalRoadS1.evaluate(&m.last_transcript));
            }
        }
    }

    #[test]
    fn next_generation_degenerate_operators() {
        let params = GaParams {
            population_size: 2,
            generations: 1,
            crossover_rate: 0.0,
            mutation_rate: 0.0,
            editing_mode: EditingMode::Ontogenic,
        };
        let mut pop = Population::from_genotypes(vec![bs("0000"), bs("1111")]);
        pop.members[0].fitness = 1.0;
        pop.members[1].fitness = 2.0;
        let next = next_generation(&pop, &params, &mut RandomSource::new(2)).unwrap();
        assert_eq!(next.len(), 2);
        for m in &next.members {
            assert!(m.genotype == bs("0000") || m.genotype == bs("1111"));
            assert!(!m.is_evaluated());
        }
    }

    #[test]
    fn next_generation_preserves_size() {
        let mut rng = RandomSource::new(4);
        for l in [2, 3, 7, 40, 50] {
            let mut pop = Population::random(l, 20, &mut rng).unwrap();
            for m in &mut pop.members {
                m.fitness = rng.uniform();
            }
            let params = GaParams {
                population_size: l,
                ..rr_params(1)
            };
            assert_eq!(next_generation(&pop, &params, &mut rng).unwrap().len(), l);
        }
    }

    #[test]
    fn selection_does_not_lose_the_best_in_expectation() {
        let params = GaParams {
            crossover_rate: 0.0,
            mutation_rate: 0.0,
            ..rr_params(1)
        };
        let mut rng = RandomSource::new(10);
        let mut pop = Population::random(40, 40, &mut rng).unwrap();
        for (i, m) in pop.members.iter_mut().enumerate() {
            m.fitness = if i == 17 { 50.0 } else { (i % 5) as f64 };
        }
        let best = pop.members[17].genotype.clone();
        let trials = 2000;
        let copies: usize = (0..trials)
            .map(|_| {
                next_generation(&pop, &params, &mut rng)
                    .unwrap()
                    .members
                    .iter()
                    .filter(|m| m.genotype == best)
                    .count()
            })
            .sum();
        let mean = copies as f64 / trials as f64;
        // expectation is 40 * 79 / 1600 = 1.975
        assert!(mean >= 1.0 && (mean - 1.975).abs() < 0.1, "{mean}");
    }

    #[test]
    fn run_ga_shapes_and_determinism() {
        let trace = run_ga(&RoyalRoadS1, &rr_params(1), &EditorFamily::empty(), 5).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(
            trace.generations[0].best_so_far,
            trace.generations[0].best_fitness
        );

        let fam = EditorFamily::new(vec![Editor::parse("00", 0.3, "delete 2").unwrap()]);
        let a = run_ga(&RoyalRoadS1, &rr_params(30), &fam, 77).unwrap();
        let b = run_ga(&RoyalRoadS1, &rr_params(30), &fam, 77).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 30);
        assert!(a
            .generations
            .windows(2)
            .all(|w| w[1].best_so_far >= w[0].best_so_far));
        assert_eq!(a.best_fitness, a.final_best_so_far());
    }

    #[test]
    fn run_ga_rejects_bad_config() {
        let bad = GaParams {
            mutation_rate: 1.5,
            ..rr_params(5)
        };
        assert!(run_ga(&RoyalRoadS1, &bad, &EditorFamily::empty(), 0).is_err());
        let long = EditorFamily::new(vec![Editor::new(
            BitString::zeros(40),
            0.5,
            crate::editing::EditFunction::Delete(1),
        )
        .unwrap()]);
        assert!(matches!(
            run_ga(&RoyalRoadS1, &rr_params(5), &long, 0),
            Err(GaeError::PatternTooLong { .. })
        ));
    }
}

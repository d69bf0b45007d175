use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ops::{init_population, mutate, one_point_crossover, select_next_parents};
use super::{
    fitness_from_time, EvaluatedIndividual, GaConfig, GaError, GenerationStats, Genome, IndividualStatus, SearchResult,
};
use crate::analysis::GenomeMap;
use crate::evaluation::{Evaluator, Measurement, MeasurementCache, MeasurementStatus};
use crate::scalar::Scalar;
use crate::source::LoopTree;

/// Run the search for `config.generations` generations.
///
/// The population is clamped to `config.effective_population(map.len())`.
/// Genomes that offload two nested loops are charged the penalty time
/// without calling the evaluator; every other genome goes through the cache,
/// so each distinct valid genome is measured at most once.
pub fn run_ga<T: Scalar, E: Evaluator<T> + ?Sized>(
    config: &GaConfig<T>,
    tree: &LoopTree,
    map: &GenomeMap,
    evaluator: &E,
) -> Result<SearchResult<T>, GaError> {
    config.validate()?;
    if map.is_empty() {
        return Err(GaError::EmptyGenome);
    }
    let genes = map.len();
    let m = config.effective_population(genes);
    let cfg = GaConfig { population: m, ..config.clone() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let cache = MeasurementCache::new();

    let mut population = init_population(&cfg, genes, &mut rng)?;
    let mut history = Vec::with_capacity(cfg.generations);
    let mut best: Option<EvaluatedIndividual<T>> = None;
    let mut invalid_skipped = 0;

    for gen in 1..=cfg.generations {
        let (evaluated, evals) = evaluate_population(&cfg, tree, map, evaluator, &cache, &population)?;
        let invalid = population.iter().filter(|g| !g.is_valid(tree, map)).count();
        invalid_skipped += invalid;

        let fitnesses: Vec<T> = evaluated.iter().map(|e| e.fitness).collect();
        let elite = super::ops::elite_index(&fitnesses);
        history.push(GenerationStats {
            gen,
            best_seconds: evaluated[elite].seconds,
            best_fitness: evaluated[elite].fitness,
            mean_fitness: fitnesses.iter().copied().sum::<T>() / T::of_count(m as u64),
            evals,
            cache_hits: m - invalid - evals,
        });
        for e in &evaluated {
            if best.as_ref().is_none_or(|b| e.fitness > b.fitness) {
                best = Some(e.clone());
            }
        }

        if gen < cfg.generations {
            population = breed(&cfg, &population, &fitnesses, &mut rng);
        }
    }

    Ok(SearchResult {
        best: best.expect("at least one generation ran"),
        history,
        effective_population: m,
        evaluations: cache.invocations(),
        invalid_skipped,
    })
}

fn breed<T: Scalar>(cfg: &GaConfig<T>, population: &[Genome], fitnesses: &[T], rng: &mut ChaCha8Rng) -> Vec<Genome> {
    let pool = select_next_parents(population, fitnesses, rng);
    let mut next = Vec::with_capacity(pool.len());
    next.push(pool[0].clone());
    for pair in pool[1..].chunks(2) {
        match pair {
            [a, b] => {
                let (c1, c2) = one_point_crossover(a, b, cfg, rng);
                next.push(mutate(&c1, cfg, rng));
                next.push(mutate(&c2, cfg, rng));
            }
            [a] => next.push(mutate(a, cfg, rng)),
            _ => unreachable!(),
        }
    }
    next
}

/// Evaluate one population through `cache`; returns the individuals in index
/// order and the number of evaluator calls made. Invalid genomes get the
/// penalty without an evaluator call.
pub fn evaluate_population<T: Scalar, E: Evaluator<T> + ?Sized>(
    cfg: &GaConfig<T>,
    tree: &LoopTree,
    map: &GenomeMap,
    evaluator: &E,
    cache: &MeasurementCache<T>,
    population: &[Genome],
) -> Result<(Vec<EvaluatedIndividual<T>>, usize), GaError> {
    let valid: Vec<bool> = population.iter().map(|g| g.is_valid(tree, map)).collect();

    // distinct genomes not yet measured, in first-occurrence order
    let mut seen = HashSet::new();
    let pending: Vec<&Genome> = population
        .iter()
        .zip(&valid)
        .filter(|(g, ok)| **ok && !cache.contains(g) && seen.insert((*g).clone()))
        .map(|(g, _)| g)
        .collect();
    let run = |g: &&Genome| cache.get_or_evaluate(g, |g| evaluator.evaluate(g)).map(|(_, _)| ());
    let results: Vec<_> =
        if evaluator.concurrent() { pending.par_iter().map(run).collect() } else { pending.iter().map(run).collect() };
    for r in results {
        r?;
    }

    let mut fresh: HashSet<&Genome> = pending.iter().copied().collect();
    let mut out = Vec::with_capacity(population.len());
    for (g, ok) in population.iter().zip(valid) {
        let (m, status) = if !ok {
            (Measurement::penalty(MeasurementStatus::Invalid, cfg.penalty_seconds), IndividualStatus::Invalid)
        } else {
            let m = cache.get(g).expect("every valid genome was just measured");
            let status = if fresh.remove(g) { m.status.into() } else { IndividualStatus::CacheHit };
            (m, status)
        };
        let fitness = fitness_from_time(m.seconds, m.status, cfg)?;
        out.push(EvaluatedIndividual { genome: g.clone(), seconds: m.seconds, fitness, status });
    }
    Ok((out, pending.len()))
}

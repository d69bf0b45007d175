//! Genetic operators. Each one documents exactly which draws it takes from
//! the generator, so a seed fixes the whole search.

use rand::Rng;

use super::{GaConfig, GaError, Genome};
use crate::scalar::Scalar;

/// `config.population` genomes of length `genes`; draws one `bool` per bit,
/// individual by individual, bit by bit.
pub fn init_population<T: Scalar, R: Rng + ?Sized>(
    config: &GaConfig<T>,
    genes: usize,
    rng: &mut R,
) -> Result<Vec<Genome>, GaError> {
    if genes == 0 {
        return Err(GaError::EmptyGenome);
    }
    Ok((0..config.population).map(|_| Genome::from_bits((0..genes).map(|_| rng.gen::<bool>()).collect())).collect())
}

/// Probability of drawing each individual: `fitness / sum(fitness)`.
pub fn roulette_probabilities<T: Scalar>(fitnesses: &[T]) -> Vec<T> {
    let total: T = fitnesses.iter().copied().sum();
    fitnesses.iter().map(|&f| f / total).collect()
}

/// Index of the highest fitness, ties to the lowest index.
pub fn elite_index<T: Scalar>(fitnesses: &[T]) -> usize {
    let mut best = 0;
    for (i, &f) in fitnesses.iter().enumerate().skip(1) {
        if f > fitnesses[best] {
            best = i;
        }
    }
    best
}

/// One fitness-proportional draw; consumes a single uniform `f64`.
pub fn roulette_draw<T: Scalar, R: Rng + ?Sized>(fitnesses: &[T], rng: &mut R) -> usize {
    let total: T = fitnesses.iter().copied().sum();
    let target = T::of(rng.gen::<f64>()) * total;
    let mut acc = T::zero();
    for (i, &f) in fitnesses.iter().enumerate() {
        acc = acc + f;
        if target < acc {
            return i;
        }
    }
    fitnesses.len() - 1
}

/// Mating pool for the next generation: slot 0 is the elite, the remaining
/// `len - 1` slots are roulette draws with replacement.
pub fn select_next_parents<T: Scalar, R: Rng + ?Sized>(
    population: &[Genome],
    fitnesses: &[T],
    rng: &mut R,
) -> Vec<Genome> {
    assert_eq!(population.len(), fitnesses.len());
    let mut pool = Vec::with_capacity(population.len());
    pool.push(population[elite_index(fitnesses)].clone());
    for _ in 1..population.len() {
        pool.push(population[roulette_draw(fitnesses, rng)].clone());
    }
    pool
}

/// Swap the suffixes of `p1` and `p2` from position `cut` on.
pub fn crossover_at(p1: &Genome, p2: &Genome, cut: usize) -> (Genome, Genome) {
    let mut a = p1.bits()[..cut].to_vec();
    a.extend_from_slice(&p2.bits()[cut..]);
    let mut b = p2.bits()[..cut].to_vec();
    b.extend_from_slice(&p1.bits()[cut..]);
    (Genome::from_bits(a), Genome::from_bits(b))
}

/// With probability `crossover_rate`, cut at a uniform point in `1..len` and
/// swap suffixes. Draws one `f64`, plus one `usize` when the cut happens;
/// genomes shorter than two genes are copied without any draw.
pub fn one_point_crossover<T: Scalar, R: Rng + ?Sized>(
    p1: &Genome,
    p2: &Genome,
    config: &GaConfig<T>,
    rng: &mut R,
) -> (Genome, Genome) {
    assert_eq!(p1.len(), p2.len());
    let len = p1.len();
    if len < 2 {
        return (p1.clone(), p2.clone());
    }
    if rng.gen::<f64>() < config.crossover_rate.to_f64_lossy() {
        let cut = rng.gen_range(1..len);
        crossover_at(p1, p2, cut)
    } else {
        (p1.clone(), p2.clone())
    }
}

/// Flip each bit independently with probability `mutation_rate`; one `f64` per bit.
pub fn mutate<T: Scalar, R: Rng + ?Sized>(genome: &Genome, config: &GaConfig<T>, rng: &mut R) -> Genome {
    let rate = config.mutation_rate.to_f64_lossy();
    let mut g = genome.clone();
    for i in 0..g.len() {
        if rng.gen::<f64>() < rate {
            g.flip(i);
        }
    }
    g
}

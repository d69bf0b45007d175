//! Genetic search over offload patterns.
//!
//! A generation is: evaluate every individual (through the measurement
//! cache), record statistics, then breed the next population. Breeding keeps
//! the best individual verbatim in slot 0 and fills the rest by roulette
//! selection, pairing pool slots `(1,2), (3,4), ...` for one-point crossover
//! and mutating every non-elite child.
//!
//! All randomness comes from one `ChaCha8Rng` seeded with `rng_seed`, drawn in
//! this order: initial bits; then per generation the `M - 1` roulette draws,
//! followed pair by pair by the crossover draws and the mutation draws of the
//! first and second child. Evaluation never touches the generator, so
//! parallel evaluation does not change results.

mod genome;
pub mod ops;
mod search;

pub use genome::{Genome, GenomeParseError};
pub use ops::{crossover_at, init_population, mutate, one_point_crossover, select_next_parents};
pub use search::{evaluate_population, run_ga};

use serde::{Deserialize, Serialize};

use crate::evaluation::{EvalError, MeasurementStatus};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig<T> {
    pub population: usize,
    pub generations: usize,
    pub crossover_rate: T,
    pub mutation_rate: T,
    pub timeout_seconds: T,
    /// Time charged to timed-out and invalid individuals.
    pub penalty_seconds: T,
    /// Fitness is `seconds ^ fitness_exponent`.
    pub fitness_exponent: T,
    pub rng_seed: u64,
}

impl<T: Scalar> Default for GaConfig<T> {
    fn default() -> Self {
        GaConfig {
            population: 30,
            generations: 20,
            crossover_rate: T::of(0.9),
            mutation_rate: T::of(0.05),
            timeout_seconds: T::of(180.0),
            penalty_seconds: T::of(1000.0),
            fitness_exponent: T::of(-0.5),
            rng_seed: 0,
        }
    }
}

impl<T: Scalar> GaConfig<T> {
    pub fn validate(&self) -> Result<(), GaError> {
        let unit = |x: T| x >= T::zero() && x <= T::one();
        let problem = if self.population < 2 {
            "population must be at least 2"
        } else if self.generations < 1 {
            "generations must be at least 1"
        } else if !unit(self.crossover_rate) {
            "crossover rate must lie in [0, 1]"
        } else if !unit(self.mutation_rate) {
            "mutation rate must lie in [0, 1]"
        } else if !self.timeout_seconds.gt_zero() {
            "timeout must be positive"
        } else if !self.penalty_seconds.gt_zero() {
            "penalty time must be positive"
        } else if !self.fitness_exponent.lt_zero() {
            "fitness exponent must be negative"
        } else {
            return Ok(());
        };
        Err(GaError::Config(problem.to_string()))
    }

    /// Population actually used for `genes` loops: never more than the gene
    /// length, never fewer than two.
    pub fn effective_population(&self, genes: usize) -> usize {
        self.population.min(genes.max(2))
    }

    /// Fitness of the penalty time.
    pub fn penalty_fitness(&self) -> T {
        self.penalty_seconds.powf(self.fitness_exponent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("measured time must be positive, got {0}")]
pub struct DomainError(pub f64);

/// `seconds ^ exponent` for a measured run; the penalty time's fitness otherwise.
pub fn fitness_from_time<T: Scalar>(
    seconds: T,
    status: MeasurementStatus,
    config: &GaConfig<T>,
) -> Result<T, DomainError> {
    match status {
        MeasurementStatus::Measured => {
            if !seconds.gt_zero() {
                return Err(DomainError(seconds.to_f64_lossy()));
            }
            Ok(seconds.powf(config.fitness_exponent))
        }
        MeasurementStatus::Timeout | MeasurementStatus::Invalid => Ok(config.penalty_fitness()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IndividualStatus {
    Measured,
    Timeout,
    Invalid,
    CacheHit,
}

impl From<MeasurementStatus> for IndividualStatus {
    fn from(s: MeasurementStatus) -> Self {
        match s {
            MeasurementStatus::Measured => IndividualStatus::Measured,
            MeasurementStatus::Timeout => IndividualStatus::Timeout,
            MeasurementStatus::Invalid => IndividualStatus::Invalid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluatedIndividual<T> {
    pub genome: Genome,
    pub seconds: T,
    pub fitness: T,
    pub status: IndividualStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationStats<T> {
    pub gen: usize,
    pub best_seconds: T,
    pub best_fitness: T,
    pub mean_fitness: T,
    pub evals: usize,
    pub cache_hits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult<T> {
    /// Highest-fitness individual ever evaluated (first one on ties).
    pub best: EvaluatedIndividual<T>,
    pub history: Vec<GenerationStats<T>>,
    pub effective_population: usize,
    /// Total calls into the evaluator.
    pub evaluations: usize,
    /// Individuals skipped as invalid without an evaluator call.
    pub invalid_skipped: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum GaError {
    #[error("no offloadable loops")]
    EmptyGenome,
    #[error("invalid GA configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

//! Source-to-source GPU offload tuner.
//!
//! The crate parses a small C subset, discovers and numbers loops, decides
//! which loops may run on the GPU, searches offload patterns with a genetic
//! algorithm, plans hoisted `#pragma acc data` transfer directives for each
//! pattern and emits the annotated source.
//!
//! Real-valued quantities (seconds, fitness, cost-model parameters) are
//! generic over [`Scalar`]; the `*F64` / `*F32` aliases below pick a width.

pub mod analysis;
pub mod emit;
pub mod evaluation;
pub mod ga;
pub mod pipeline;
pub mod scalar;
pub mod source;
pub mod transfer;

pub use analysis::{
    build_genome_map, check_all, check_parallelizable, gate, load_profile, parse_profile, GateDecision, GenomeMap,
    Oracle, ParallelizabilityVerdict, Profile, VerdictReason, DEFAULT_GATE_THRESHOLD,
};
pub use emit::{emit_annotated, AnnotatedSource, InsertedLine};
pub use evaluation::{
    command_evaluate, simulate_time, CommandEvaluatorConfig, CostModel, Evaluator, Measurement, MeasurementCache,
    MeasurementStatus,
};
pub use ga::{fitness_from_time, run_ga, EvaluatedIndividual, GaConfig, Genome, SearchResult};
pub use scalar::Scalar;
pub use source::{
    build_loop_tree, extract_accesses, parse, AccessKind, LoopId, LoopNode, LoopTree, Program, SourcePos, VarAccess,
};
pub use transfer::{directive_exec_counts, plan_transfers, Clause, DataDirective, TransferPlan};

pub type GaConfigF64 = GaConfig<f64>;
pub type GaConfigF32 = GaConfig<f32>;
pub type CostModelF64 = CostModel<f64>;
pub type CostModelF32 = CostModel<f32>;
pub type MeasurementF64 = Measurement<f64>;
pub type MeasurementF32 = Measurement<f32>;
pub type SearchResultF64 = SearchResult<f64>;
pub type SearchResultF32 = SearchResult<f32>;

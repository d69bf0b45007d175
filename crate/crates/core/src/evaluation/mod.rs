//! Measuring offload patterns.
//!
//! Two evaluators share the [`Evaluator`] interface: [`SimulatedEvaluator`]
//! prices a pattern with a deterministic cost model, and [`CommandEvaluator`]
//! compiles and runs the annotated source under a wall-clock timeout.

mod cache;
mod command;
mod sim;

use std::path::Path;

pub use cache::MeasurementCache;
pub use command::{command_evaluate, CommandEvaluator, CommandEvaluatorConfig};
pub use sim::{simulate_micros, simulate_time, CostModel, LoopCost, ModelError, SimulatedEvaluator, VarCost};

use serde::Serialize;

use crate::analysis::{GenomeMap, Profile};
use crate::emit::{emit_annotated, AnnotatedSource, EmitError};
use crate::ga::Genome;
use crate::scalar::Scalar;
use crate::source::{LoopTree, Program, VarAccess};
use crate::transfer::{plan_transfers, PlanError, TransferPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MeasurementStatus {
    Measured,
    Timeout,
    Invalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measurement<T> {
    pub seconds: T,
    pub status: MeasurementStatus,
}

impl<T: Scalar> Measurement<T> {
    pub fn measured(seconds: T) -> Self {
        Measurement { seconds, status: MeasurementStatus::Measured }
    }

    /// Timeout and Invalid results carry the penalty time.
    pub fn penalty(status: MeasurementStatus, penalty_seconds: T) -> Self {
        Measurement { seconds: penalty_seconds, status }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error("cannot spawn `{command}`: {source}")]
    Spawn { command: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

pub trait Evaluator<T: Scalar>: Sync {
    fn evaluate(&self, genome: &Genome) -> Result<Measurement<T>, EvalError>;

    /// Whether distinct genomes may be evaluated at the same time.
    fn concurrent(&self) -> bool {
        true
    }
}

/// Everything needed to turn a genome into a transfer plan and annotated code.
#[derive(Debug, Clone)]
pub struct PlanningContext {
    pub program: Program,
    pub tree: LoopTree,
    pub accesses: Vec<VarAccess>,
    pub map: GenomeMap,
    pub profile: Profile,
}

impl PlanningContext {
    pub fn plan(&self, genome: &Genome) -> Result<TransferPlan, PlanError> {
        plan_transfers(&self.program, &self.tree, &self.accesses, genome, &self.map)
    }

    pub fn emit(&self, genome: &Genome, plan: &TransferPlan) -> Result<AnnotatedSource, EmitError> {
        emit_annotated(&self.program, &self.tree, genome, &self.map, plan)
    }
}

/// Single-quote `path` for `sh -c`.
pub(crate) fn shell_quote(path: &Path) -> String {
    format!("'{}'", path.display().to_string().replace('\'', r"'\''"))
}

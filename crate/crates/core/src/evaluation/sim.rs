use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EvalError, Evaluator, Measurement, PlanningContext};
use crate::analysis::{GenomeMap, Profile};
use crate::ga::Genome;
use crate::scalar::{micros_per_second, Scalar};
use crate::source::{LoopId, LoopTree};
use crate::transfer::{directive_exec_counts, TransferPlan};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LoopCost<T> {
    /// Cost of one iteration of the loop's own body, nested loops excluded.
    pub cpu_us_per_iter: T,
    pub gpu_speedup: T,
    pub kernel_launch_us: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarCost {
    pub size_bytes: u64,
}

/// Parameters of the simulated evaluator. All times are in microseconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CostModel<T> {
    pub loops: BTreeMap<LoopId, LoopCost<T>>,
    #[serde(default)]
    pub vars: BTreeMap<String, VarCost>,
    pub transfer_fixed_us: T,
    pub transfer_us_per_kib: T,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("cost model has no entry for loop {0}")]
    MissingLoop(LoopId),
    #[error("cost model has no entry for variable `{0}`")]
    MissingVar(String),
    #[error("invalid cost model: {0}")]
    Invalid(String),
    #[error("cannot read cost model {path}: {message}")]
    Load { path: String, message: String },
}

impl<T: Scalar> CostModel<T> {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let model: CostModel<T> = serde_json::from_str(text).map_err(|e| ModelError::Invalid(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| ModelError::Load { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text).map_err(|e| match e {
            ModelError::Invalid(message) => ModelError::Load { path: path.display().to_string(), message },
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let non_negative = |x: T| x >= T::zero() && x.is_finite();
        for (id, c) in &self.loops {
            if !non_negative(c.cpu_us_per_iter) || !non_negative(c.kernel_launch_us) {
                return Err(ModelError::Invalid(format!("loop {id} has a negative or non-finite cost")));
            }
            if !c.gpu_speedup.gt_zero() || !c.gpu_speedup.is_finite() {
                return Err(ModelError::Invalid(format!("loop {id} needs a positive gpu_speedup")));
            }
        }
        if !non_negative(self.transfer_fixed_us) || !non_negative(self.transfer_us_per_kib) {
            return Err(ModelError::Invalid("transfer costs must be non-negative".into()));
        }
        Ok(())
    }

    /// Every loop of `tree` has an entry.
    pub fn check_covers(&self, tree: &LoopTree) -> Result<(), ModelError> {
        (0..tree.len()).try_for_each(|id| self.loop_cost(id).map(|_| ()))
    }

    fn loop_cost(&self, id: LoopId) -> Result<&LoopCost<T>, ModelError> {
        self.loops.get(&id).ok_or(ModelError::MissingLoop(id))
    }

    fn var_size(&self, var: &str) -> Result<u64, ModelError> {
        self.vars.get(var).map(|v| v.size_bytes).ok_or_else(|| ModelError::MissingVar(var.to_string()))
    }

    /// Cost of executing one directive moving `vars`.
    pub fn directive_cost_us(&self, vars: &[String]) -> Result<T, ModelError> {
        let mut cost = self.transfer_fixed_us;
        for v in vars {
            let kib = T::of_count(self.var_size(v)?) / T::of(1024.0);
            cost = cost + kib * self.transfer_us_per_kib;
        }
        Ok(cost)
    }
}

/// Simulated run time in microseconds.
pub fn simulate_micros<T: Scalar>(
    model: &CostModel<T>,
    genome: &Genome,
    map: &GenomeMap,
    tree: &LoopTree,
    profile: &Profile,
    plan: &TransferPlan,
) -> Result<T, ModelError> {
    let regions = genome.selected_loops(map);
    let serial = |id: LoopId| -> Result<T, ModelError> {
        Ok(T::of_count(profile.total_iterations(id)) * model.loop_cost(id)?.cpu_us_per_iter)
    };

    let mut total = T::zero();
    for id in 0..tree.len() {
        let offloaded = regions.iter().any(|&g| g == id || tree.is_ancestor(g, id));
        if !offloaded {
            total = total + serial(id)?;
        }
    }
    for &g in &regions {
        let cost = model.loop_cost(g)?;
        let mut body = T::zero();
        for id in tree.subtree(g) {
            body = body + serial(id)?;
        }
        total = total + body / cost.gpu_speedup + T::of_count(profile.entry_count(g)) * cost.kernel_launch_us;
    }
    for (d, count) in directive_exec_counts(plan, tree, profile) {
        total = total + T::of_count(count) * model.directive_cost_us(&d.vars)?;
    }
    Ok(total)
}

/// [`simulate_micros`] converted to seconds, as a measured result.
pub fn simulate_time<T: Scalar>(
    model: &CostModel<T>,
    genome: &Genome,
    map: &GenomeMap,
    tree: &LoopTree,
    profile: &Profile,
    plan: &TransferPlan,
) -> Result<Measurement<T>, ModelError> {
    let us = simulate_micros(model, genome, map, tree, profile, plan)?;
    Ok(Measurement::measured(us / micros_per_second()))
}

/// Plans transfers for each genome and prices it with a [`CostModel`].
#[derive(Debug, Clone)]
pub struct SimulatedEvaluator<T> {
    pub context: PlanningContext,
    pub model: CostModel<T>,
}

impl<T: Scalar> SimulatedEvaluator<T> {
    pub fn new(context: PlanningContext, model: CostModel<T>) -> Result<Self, ModelError> {
        model.validate()?;
        model.check_covers(&context.tree)?;
        Ok(SimulatedEvaluator { context, model })
    }
}

impl<T: Scalar> Evaluator<T> for SimulatedEvaluator<T> {
    fn evaluate(&self, genome: &Genome) -> Result<Measurement<T>, EvalError> {
        let c = &self.context;
        let plan = c.plan(genome)?;
        Ok(simulate_time(&self.model, genome, &c.map, &c.tree, &c.profile, &plan)?)
    }
}

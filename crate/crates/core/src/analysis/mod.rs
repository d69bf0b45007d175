//! Pre-search analysis: the loop-count gate, per-loop parallelizability and
//! the mapping from genome positions to loops.

mod parallel;
mod profile;

pub use parallel::{
    check_all, check_parallelizable, kernels_trial_source, Oracle, OracleError, ParallelizabilityVerdict, VerdictReason,
};
pub use profile::{load_profile, parse_profile, LoopCounts, Profile, ProfileError};

use serde::Serialize;

use crate::source::{LoopId, LoopTree};

/// Programs whose hottest loop runs fewer iterations than this are not searched.
pub const DEFAULT_GATE_THRESHOLD: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateDecision {
    pub pass: bool,
    pub max_total_iterations: u64,
    pub threshold: u64,
    /// The loop with the largest iteration count (lowest id on ties).
    #[serde(rename = "loop")]
    pub hottest_loop: Option<LoopId>,
}

/// Passes iff some loop's `total_iterations >= threshold`.
pub fn gate(tree: &LoopTree, profile: &Profile, threshold: u64) -> GateDecision {
    let mut hottest: Option<(LoopId, u64)> = None;
    for n in &tree.nodes {
        let it = profile.total_iterations(n.loop_id);
        if hottest.is_none_or(|(_, best)| it > best) {
            hottest = Some((n.loop_id, it));
        }
    }
    let max = hottest.map_or(0, |(_, it)| it);
    GateDecision {
        pass: hottest.is_some() && max >= threshold,
        max_total_iterations: max,
        threshold,
        hottest_loop: hottest.map(|(id, _)| id),
    }
}

/// Ascending ids of the loops a genome ranges over; its length is the gene length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GenomeMap {
    loops: Vec<LoopId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenomeMapError {
    #[error("no offloadable loops")]
    EmptyGenome,
}

impl GenomeMap {
    pub fn new(mut loops: Vec<LoopId>) -> Result<Self, GenomeMapError> {
        loops.sort_unstable();
        loops.dedup();
        if loops.is_empty() {
            return Err(GenomeMapError::EmptyGenome);
        }
        Ok(GenomeMap { loops })
    }

    pub fn len(&self) -> usize {
        self.loops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }

    pub fn loops(&self) -> &[LoopId] {
        &self.loops
    }

    pub fn loop_at(&self, gene: usize) -> LoopId {
        self.loops[gene]
    }

    pub fn gene_of(&self, loop_id: LoopId) -> Option<usize> {
        self.loops.binary_search(&loop_id).ok()
    }
}

pub fn build_genome_map(verdicts: &[ParallelizabilityVerdict]) -> Result<GenomeMap, GenomeMapError> {
    GenomeMap::new(verdicts.iter().filter(|v| v.eligible).map(|v| v.loop_id).collect())
}

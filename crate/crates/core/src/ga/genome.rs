use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::analysis::GenomeMap;
use crate::source::{LoopId, LoopTree};
use crate::transfer::nested_selection;

/// One offload pattern: bit `k` set means loop `map.loop_at(k)` runs on the GPU.
///
/// Written as a bitstring whose leftmost character is the lowest eligible loop id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genome {
    bits: Vec<bool>,
}

impl Genome {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Genome { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Genome { bits: vec![false; len] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn selected_loops(&self, map: &GenomeMap) -> Vec<LoopId> {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| map.loop_at(i)).collect()
    }

    /// Invalid iff two offloaded loops are nested inside one another.
    pub fn is_valid(&self, tree: &LoopTree, map: &GenomeMap) -> bool {
        nested_selection(tree, &self.selected_loops(map)).is_none()
    }

    /// Every genome of length `len`, in counting order.
    pub fn enumerate(len: usize) -> impl Iterator<Item = Genome> {
        assert!(len < 64, "exhaustive enumeration is limited to 63 genes");
        (0u64..1 << len).map(move |n| Genome { bits: (0..len).map(|i| n >> (len - 1 - i) & 1 == 1).collect() })
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("genome bitstring may only contain '0' and '1', found {0:?}")]
pub struct GenomeParseError(pub char);

impl FromStr for Genome {
    type Err = GenomeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(GenomeParseError(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Genome::from_bits)
    }
}

impl Serialize for Genome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

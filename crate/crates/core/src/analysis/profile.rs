use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::source::{LoopId, LoopTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopCounts {
    /// Times control reached the loop header.
    pub entry_count: u64,
    /// Body executions summed over all entries.
    pub total_iterations: u64,
}

/// Per-loop execution counts, typically converted from a coverage run.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Profile {
    pub entries: BTreeMap<LoopId, LoopCounts>,
}

impl Profile {
    pub fn counts(&self, id: LoopId) -> LoopCounts {
        self.entries.get(&id).copied().unwrap_or(LoopCounts { entry_count: 0, total_iterations: 0 })
    }

    pub fn entry_count(&self, id: LoopId) -> u64 {
        self.counts(id).entry_count
    }

    pub fn total_iterations(&self, id: LoopId) -> u64 {
        self.counts(id).total_iterations
    }

    pub fn to_json(&self) -> String {
        let loops: Vec<RawRecord> = self
            .entries
            .iter()
            .map(|(id, c)| RawRecord {
                id: *id as i64,
                entry_count: c.entry_count as i64,
                total_iterations: c.total_iterations as i64,
            })
            .collect();
        serde_json::to_string_pretty(&RawProfile { loops }).expect("profile serializes")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ProfileError {
    #[error("cannot read profile {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed profile: {0}")]
    Malformed(String),
    #[error("profile has no record for loop ids {0:?}")]
    MissingLoops(Vec<LoopId>),
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    loops: Vec<RawRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: i64,
    entry_count: i64,
    total_iterations: i64,
}

pub fn load_profile(path: impl AsRef<Path>, tree: &LoopTree) -> Result<Profile, ProfileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ProfileError::Io { path: path.display().to_string(), source })?;
    parse_profile(&text, tree)
}

/// Parse `{"loops":[{"id":0,"entry_count":1,"total_iterations":10000000}, ...]}` and check
/// it covers every loop of `tree`.
pub fn parse_profile(text: &str, tree: &LoopTree) -> Result<Profile, ProfileError> {
    let raw: RawProfile = serde_json::from_str(text).map_err(|e| ProfileError::Malformed(e.to_string()))?;
    let mut entries = BTreeMap::new();
    for r in raw.loops {
        if r.id < 0 || r.entry_count < 0 || r.total_iterations < 0 {
            return Err(ProfileError::Malformed(format!("negative value in record for loop {}", r.id)));
        }
        let id = r.id as LoopId;
        if id >= tree.len() {
            return Err(ProfileError::Malformed(format!("loop {id} does not exist in the program")));
        }
        let counts = LoopCounts { entry_count: r.entry_count as u64, total_iterations: r.total_iterations as u64 };
        if entries.insert(id, counts).is_some() {
            return Err(ProfileError::Malformed(format!("duplicate record for loop {id}")));
        }
    }
    let missing: Vec<LoopId> = (0..tree.len()).filter(|id| !entries.contains_key(id)).collect();
    if !missing.is_empty() {
        return Err(ProfileError::MissingLoops(missing));
    }
    Ok(Profile { entries })
}

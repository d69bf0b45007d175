use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use super::Measurement;
use crate::ga::Genome;
use crate::scalar::Scalar;

type Slot<T> = Arc<Mutex<Option<Measurement<T>>>>;

/// Measurements keyed by genome bitstring.
///
/// Concurrent callers asking for the same genome wait on a per-genome slot,
/// so the inner evaluator runs at most once per key. A failed evaluation
/// leaves the slot empty and the next caller retries.
#[derive(Debug)]
pub struct MeasurementCache<T> {
    slots: Mutex<HashMap<String, Slot<T>>>,
    invocations: AtomicUsize,
}

impl<T: Scalar> Default for MeasurementCache<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> MeasurementCache<T> {
    pub fn new() -> Self {
        MeasurementCache { slots: Mutex::new(HashMap::new()), invocations: AtomicUsize::new(0) }
    }

    fn slot(&self, key: &str) -> Slot<T> {
        let mut slots = self.slots.lock().expect("cache lock poisoned");
        slots.entry(key.to_string()).or_default().clone()
    }

    pub fn get(&self, genome: &Genome) -> Option<Measurement<T>> {
        let slot = self.slots.lock().expect("cache lock poisoned").get(&genome.to_string()).cloned()?;
        let m = *slot.lock().expect("cache slot poisoned");
        m
    }

    pub fn contains(&self, genome: &Genome) -> bool {
        self.get(genome).is_some()
    }

    /// Stored measurement, or `inner(genome)` stored on success. The flag is
    /// true on a hit.
    pub fn get_or_evaluate<E>(
        &self,
        genome: &Genome,
        inner: impl FnOnce(&Genome) -> Result<Measurement<T>, E>,
    ) -> Result<(Measurement<T>, bool), E> {
        let slot = self.slot(&genome.to_string());
        let mut guard = slot.lock().expect("cache slot poisoned");
        if let Some(m) = *guard {
            return Ok((m, true));
        }
        self.invocations.fetch_add(1, Ordering::SeqCst);
        let m = inner(genome)?;
        *guard = Some(m);
        Ok((m, false))
    }

    /// Number of times an inner evaluator was invoked.
    pub fn invocations(&self) -> usize {
        self.invocations.load(Ordering::SeqCst)
    }

    pub fn len(&self) -> usize {
        let slots: Vec<Slot<T>> = self.slots.lock().expect("cache lock poisoned").values().cloned().collect();
        slots.iter().filter(|s| s.lock().expect("cache slot poisoned").is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

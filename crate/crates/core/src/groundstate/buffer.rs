use serde::{Deserialize, Serialize};

use super::anneal::EnergyRecord;

pub const DEFAULT_CAPACITY: usize = 50;

/// Lowest-energy distinct sequences seen so far, ordered by (energy, tokens).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainingBuffer {
    pub capacity: usize,
    records: Vec<EnergyRecord>,
}

impl Default for TrainingBuffer {
    fn default() -> Self {
        TrainingBuffer::new(DEFAULT_CAPACITY)
    }
}

impl TrainingBuffer {
    pub fn new(capacity: usize) -> Self {
        TrainingBuffer { capacity, records: Vec::with_capacity(capacity + 1) }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[EnergyRecord] {
        &self.records
    }

    pub fn best(&self) -> Option<&EnergyRecord> {
        self.records.first()
    }

    /// Returns whether the record was kept. Non-finite energies and
    /// sequences already present are ignored.
    pub fn insert(&mut self, record: EnergyRecord) -> bool {
        if !record.energy.is_finite() || self.capacity == 0 {
            return false;
        }
        if self.records.iter().any(|r| r.tokens == record.tokens) {
            return false;
        }
        let key = |r: &EnergyRecord| (r.energy, r.tokens.clone());
        let pos = self
            .records
            .partition_point(|r| r.energy.total_cmp(&record.energy).then_with(|| r.tokens.cmp(&record.tokens)).is_lt());
        if pos >= self.capacity {
            return false;
        }
        self.records.insert(pos, record);
        self.records.truncate(self.capacity);
        debug_assert!(self.records.windows(2).all(|w| key(&w[0]) <= key(&w[1])));
        true
    }
}

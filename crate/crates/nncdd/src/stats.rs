use serde::{Deserialize, Serialize};

/// Operation counters for one or more conversions.
///
/// `vec_ops` counts scalar products and linear combinations; `sat_ops`
/// counts saturation-row operations (intersections, inclusion tests), one
/// per row regardless of its width.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub time_ms: f64,
    pub vec_ops: u64,
    pub sat_ops: u64,
    pub iterations: u64,
    /// Representation size after each main-loop iteration.
    pub sizes: Vec<usize>,
}

impl StatsRecord {
    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn absorb(&mut self, other: &StatsRecord) {
        self.time_ms += other.time_ms;
        self.vec_ops += other.vec_ops;
        self.sat_ops += other.sat_ops;
        self.iterations += other.iterations;
        self.sizes.extend_from_slice(&other.sizes);
    }
}

use serde::{Deserialize, Serialize};

use crate::oracle::Element;

/// Outcome of one algorithm run, as emitted by the CLI and the bench.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algo: String,
    pub value: f64,
    pub set: Vec<Element>,
    pub oracle_calls: u64,
    /// Wall-clock time; `None` once stripped for reproducible output.
    pub wall_ms: Option<f64>,
    pub seed: Option<u64>,
    /// Seeds drawn by the randomized enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub visited: Option<usize>,
    /// Drawn seeds that passed the value filter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter_passed: Option<usize>,
}

impl ResultRecord {
    pub fn new(algo: &str, set: Vec<Element>, value: f64, oracle_calls: u64) -> Self {
        Self {
            algo: algo.to_string(),
            value,
            set,
            oracle_calls,
            wall_ms: None,
            seed: None,
            visited: None,
            filter_passed: None,
        }
    }

    pub fn timed(mut self, started: std::time::Instant) -> Self {
        self.wall_ms = Some(started.elapsed().as_secs_f64() * 1e3);
        self
    }

    pub fn without_timing(mut self) -> Self {
        self.wall_ms = None;
        self
    }
}

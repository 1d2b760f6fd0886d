//! Objective functions and matroid families used by the experiments.

mod coverage;
mod cut;
mod diversity;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matroid::{Matroid, PartitionMatroid, UniformMatroid};

pub use coverage::{Coverage, Modular};
pub use cut::{weighted_cut, WeightedCut, WeightedGraph};
pub use diversity::{diversity_objective, similarity_from_features, Diversity, SimilarityMatrix};

/// Serializable description of a matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidSpec {
    Uniform {
        cap: usize,
    },
    Partition {
        parts: Vec<Vec<usize>>,
        caps: Vec<usize>,
    },
}

pub fn build_matroid(spec: &MatroidSpec, n: usize) -> Result<Arc<dyn Matroid>> {
    Ok(match spec {
        MatroidSpec::Uniform { cap } => Arc::new(UniformMatroid::new(*cap)),
        MatroidSpec::Partition { parts, caps } => Arc::new(PartitionMatroid::new(n, parts, caps)?),
    })
}

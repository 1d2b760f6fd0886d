use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::{Instance, InstanceSpec, KnapsackSpec, ObjectiveSpec};
use crate::objectives::{MatroidSpec, WeightedGraph};

/// Erdős–Rényi graph: each unordered pair is an edge with probability `p`,
/// weights uniform on `[0, 1)`.
pub fn gen_er_graph(n: usize, p: f64, seed: u64) -> WeightedGraph {
    let p = p.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, rng.gen::<f64>()));
            }
        }
    }
    WeightedGraph::new(n, edges).expect("generated graphs are simple")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MaxCutConfig {
    pub cap: usize,
    pub degree_budget: f64,
    pub digit_budget: f64,
}

impl Default for MaxCutConfig {
    fn default() -> Self {
        Self {
            cap: 10,
            degree_budget: 100.0,
            digit_budget: 40.0,
        }
    }
}

/// Weighted cut under a cardinality cap and two knapsacks: the node degree
/// (edge count) and the last decimal digit of the node id.
pub fn maxcut_spec(g: &WeightedGraph, cfg: &MaxCutConfig) -> InstanceSpec {
    let degrees = g.degrees().into_iter().map(|d| d as f64).collect();
    let digits = (0..g.n()).map(|v| (v % 10) as f64).collect();
    InstanceSpec {
        n: g.n(),
        objective: ObjectiveSpec::Cut {
            edges: g.edges().to_vec(),
        },
        matroids: vec![MatroidSpec::Uniform { cap: cfg.cap }],
        knapsacks: KnapsackSpec {
            costs: vec![degrees, digits],
            budgets: vec![cfg.degree_budget, cfg.digit_budget],
        },
    }
}

pub fn build_maxcut_instance(g: &WeightedGraph, cfg: &MaxCutConfig) -> Result<Instance> {
    maxcut_spec(g, cfg).build()
}

//! Problem instances: objective, matroid intersection and knapsack rows.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knapsack::Knapsack;
use crate::matroid::{Matroid, MatroidIntersection};
use crate::objectives::{
    build_matroid, similarity_from_features, Coverage, Diversity, MatroidSpec, Modular,
    SimilarityMatrix, WeightedCut, WeightedGraph,
};
use crate::oracle::{Element, Objective, ValueOracle};

/// A value oracle, `k` matroids and `m` knapsack rows over `0..n`.
///
/// The knapsack is stored normalized, so every budget is 1.
#[derive(Debug, Clone)]
pub struct Instance {
    objective: Arc<dyn Objective>,
    matroids: MatroidIntersection,
    knapsack: Knapsack,
}

impl Instance {
    pub fn new(
        objective: Arc<dyn Objective>,
        matroids: MatroidIntersection,
        knapsack: Knapsack,
    ) -> Result<Self> {
        let n = objective.ground_size();
        if let Some(row) = knapsack.costs().first() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "knapsack rows have {} entries for a ground set of size {n}",
                    row.len()
                )));
            }
        }
        Ok(Self {
            objective,
            matroids,
            knapsack: knapsack.normalized(),
        })
    }

    pub fn n(&self) -> usize {
        self.objective.ground_size()
    }

    pub fn k(&self) -> usize {
        self.matroids.k()
    }

    pub fn m(&self) -> usize {
        self.knapsack.m()
    }

    pub fn objective(&self) -> &Arc<dyn Objective> {
        &self.objective
    }

    /// A fresh counted oracle over this instance's objective.
    pub fn oracle(&self) -> ValueOracle {
        ValueOracle::new(Arc::clone(&self.objective))
    }

    pub fn matroids(&self) -> &MatroidIntersection {
        &self.matroids
    }

    pub fn knapsack(&self) -> &Knapsack {
        &self.knapsack
    }

    pub fn with_knapsack(&self, knapsack: Knapsack) -> Result<Self> {
        Self::new(Arc::clone(&self.objective), self.matroids.clone(), knapsack)
    }

    pub fn with_matroids(&self, matroids: MatroidIntersection) -> Self {
        Self {
            objective: Arc::clone(&self.objective),
            matroids,
            knapsack: self.knapsack.clone(),
        }
    }

    /// Every matroid accepts `set` and every knapsack row fits.
    pub fn is_feasible(&self, set: &[Element]) -> bool {
        let n = self.n();
        set.iter().all(|&e| e < n)
            && self.matroids.is_independent(set)
            && self.knapsack.is_feasible(set)
    }

    pub fn is_singleton_feasible(&self, e: Element) -> bool {
        self.is_feasible(&[e])
    }

    /// Elements that can appear in some feasible set, ascending.
    pub fn feasible_singletons(&self) -> Vec<Element> {
        (0..self.n())
            .filter(|&e| self.is_singleton_feasible(e))
            .collect()
    }
}

/// Known optimum of an instance, when brute force was affordable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryBounds {
    pub opt_value: f64,
    pub opt_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ObjectiveSpec {
    Cut {
        edges: Vec<(usize, usize, f64)>,
    },
    /// Either an explicit similarity matrix or feature vectors with a
    /// kernel bandwidth.
    Diversity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        similarity: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        features: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<f64>,
    },
    Modular {
        weights: Vec<f64>,
    },
    Coverage {
        covers: Vec<Vec<usize>>,
        item_weights: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct KnapsackSpec {
    pub costs: Vec<Vec<f64>>,
    pub budgets: Vec<f64>,
}

/// The JSON instance file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub objective: ObjectiveSpec,
    pub matroids: Vec<MatroidSpec>,
    #[serde(default)]
    pub knapsacks: KnapsackSpec,
}

impl InstanceSpec {
    pub fn build(&self) -> Result<Instance> {
        let n = self.n;
        let objective: Arc<dyn Objective> = match &self.objective {
            ObjectiveSpec::Cut { edges } => {
                Arc::new(WeightedCut::new(&WeightedGraph::new(n, edges.clone())?))
            }
            ObjectiveSpec::Diversity {
                similarity,
                features,
                lambda,
            } => {
                let sim = match (similarity, features) {
                    (Some(rows), None) => SimilarityMatrix::from_rows(rows.clone())?,
                    (None, Some(vs)) => similarity_from_features(vs, lambda.unwrap_or(4.0))?,
                    _ => {
                        return Err(Error::Spec(
                            "diversity needs exactly one of `similarity` or `features`".into(),
                        ))
                    }
                };
                Arc::new(Diversity::new(sim))
            }
            ObjectiveSpec::Modular { weights } => Arc::new(Modular::new(weights.clone())?),
            ObjectiveSpec::Coverage {
                covers,
                item_weights,
            } => Arc::new(Coverage::new(covers.clone(), item_weights.clone())?),
        };
        if objective.ground_size() != n {
            return Err(Error::Shape(format!(
                "objective is defined on {} elements, instance declares n = {n}",
                objective.ground_size()
            )));
        }
        let matroids = self
            .matroids
            .iter()
            .map(|m| build_matroid(m, n))
            .collect::<Result<Vec<Arc<dyn Matroid>>>>()?;
        let knapsack = Knapsack::new(self.knapsacks.costs.clone(), self.knapsacks.budgets.clone())?;
        Instance::new(objective, MatroidIntersection::new(matroids)?, knapsack)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance specs always serialize")
    }
}

/// Subsets are reported as ascending id lists.
pub fn canonical(set: &[Element]) -> Vec<Element> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Element, Objective};

/// Dense symmetric similarity matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Shape(format!(
                "similarity row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        let m = Self { n, data };
        for i in 0..n {
            for j in 0..n {
                let s = m.get(i, j);
                if !(s.is_finite() && s >= 0.0) {
                    return Err(Error::Spec(format!("similarity ({i}, {j}) = {s}")));
                }
                if s != m.get(j, i) {
                    return Err(Error::Spec(format!(
                        "similarity is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }
}

/// `s_ij = exp(−λ · ‖v_i − v_j‖₂)`.
pub fn similarity_from_features(vectors: &[Vec<f64>], lambda: f64) -> Result<SimilarityMatrix> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::Parameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let n = vectors.len();
    if let Some(first) = vectors.first() {
        if let Some((i, v)) = vectors
            .iter()
            .enumerate()
            .find(|(_, v)| v.len() != first.len())
        {
            return Err(Error::Shape(format!(
                "feature vector {i} has dimension {}, expected {}",
                v.len(),
                first.len()
            )));
        }
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
        for j in i + 1..n {
            let dist = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let s = (-lambda * dist).exp();
            data[i * n + j] = s;
            data[j * n + i] = s;
        }
    }
    Ok(SimilarityMatrix { n, data })
}

/// `f(S) = (Σ_{i∈N} Σ_{j∈S} s_ij − Σ_{i∈S} Σ_{j∈S} s_ij) / n`.
///
/// Column sums are precomputed, so one evaluation costs `O(|S|²)`.
#[derive(Debug, Clone)]
pub struct Diversity {
    sim: SimilarityMatrix,
    column_sums: Vec<f64>,
}

impl Diversity {
    pub fn new(sim: SimilarityMatrix) -> Self {
        let n = sim.n();
        let column_sums = (0..n)
            .map(|j| (0..n).map(|i| sim.get(i, j)).sum())
            .collect();
        Self { sim, column_sums }
    }

    pub fn similarity(&self) -> &SimilarityMatrix {
        &self.sim
    }
}

impl Objective for Diversity {
    fn ground_size(&self) -> usize {
        self.sim.n()
    }

    fn value(&self, set: &[Element]) -> f64 {
        let n = self.sim.n();
        if n == 0 {
            return 0.0;
        }
        let mut total = 0.0;
        for &j in set {
            total += self.column_sums[j];
            let row = &self.sim.data[j * n..(j + 1) * n];
            for &i in set {
                total -= row[i];
            }
        }
        // Exact submodularity can leave −0.0 or a few ulps below zero.
        (total / n as f64).max(0.0)
    }

    fn kind(&self) -> &'static str {
        "diversity"
    }
}

pub fn diversity_objective(set: &[Element], sim: &SimilarityMatrix) -> f64 {
    Diversity::new(sim.clone()).value(set)
}

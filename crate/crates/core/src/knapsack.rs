//! Modular knapsack rows and budget reduction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Element;

/// Relative slack on knapsack comparisons. Budgets are renormalized by
/// division, so an exact `<=` is fragile.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// `m` cost rows over `n` elements, each with its own budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knapsack {
    costs: Vec<Vec<f64>>,
    budgets: Vec<f64>,
}

impl Knapsack {
    pub fn new(costs: Vec<Vec<f64>>, budgets: Vec<f64>) -> Result<Self> {
        if costs.len() != budgets.len() {
            return Err(Error::Shape(format!(
                "{} cost rows but {} budgets",
                costs.len(),
                budgets.len()
            )));
        }
        if let Some(first) = costs.first() {
            if let Some((i, row)) = costs
                .iter()
                .enumerate()
                .find(|(_, r)| r.len() != first.len())
            {
                return Err(Error::Shape(format!(
                    "cost row {i} has {} entries, row 0 has {}",
                    row.len(),
                    first.len()
                )));
            }
        }
        for (i, row) in costs.iter().enumerate() {
            if let Some(c) = row.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
                return Err(Error::Spec(format!("cost row {i} has invalid entry {c}")));
            }
        }
        if let Some(b) = budgets.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(Error::Spec(format!("budget {b} is not positive")));
        }
        Ok(Self { costs, budgets })
    }

    /// No rows at all (m = 0).
    pub fn unconstrained() -> Self {
        Self {
            costs: Vec::new(),
            budgets: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.costs.len()
    }

    pub fn costs(&self) -> &[Vec<f64>] {
        &self.costs
    }

    pub fn budgets(&self) -> &[f64] {
        &self.budgets
    }

    pub fn cost(&self, row: usize, e: Element) -> f64 {
        self.costs[row][e]
    }

    pub fn row_cost(&self, row: usize, set: &[Element]) -> f64 {
        set.iter().map(|&e| self.costs[row][e]).sum()
    }

    /// `Σ_j c_j(e)`.
    pub fn total_cost(&self, e: Element) -> f64 {
        self.costs.iter().map(|row| row[e]).sum()
    }

    pub fn fits(&self, row: usize, cost: f64) -> bool {
        cost <= self.budgets[row] * (1.0 + FEASIBILITY_TOL)
    }

    pub fn is_feasible(&self, set: &[Element]) -> bool {
        (0..self.m()).all(|i| self.fits(i, self.row_cost(i, set)))
    }

    /// Divides each row by its budget so every budget becomes 1.
    pub fn normalized(&self) -> Self {
        let costs = self
            .costs
            .iter()
            .zip(&self.budgets)
            .map(|(row, &b)| row.iter().map(|c| c / b).collect())
            .collect();
        Self {
            costs,
            budgets: vec![1.0; self.m()],
        }
    }

    /// Scales every budget by `factor`.
    pub fn with_budget_fraction(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.costs.clone(),
            self.budgets.iter().map(|b| b * factor).collect(),
        )
    }

    pub fn is_normalized(&self) -> bool {
        self.budgets.iter().all(|&b| b == 1.0)
    }
}

/// Charges `base` against every budget and renormalizes the remainder to 1:
/// `c'_i(e) = c_i(e) / (B_i − c_i(A))`.
pub fn reduce_knapsack(knapsack: &Knapsack, base: &[Element]) -> Result<Knapsack> {
    let mut costs = Vec::with_capacity(knapsack.m());
    for (i, (row, &budget)) in knapsack.costs.iter().zip(&knapsack.budgets).enumerate() {
        let used = knapsack.row_cost(i, base);
        let left = budget - used;
        if left <= 0.0 {
            return Err(Error::Reduction {
                set: base.to_vec(),
                row: i,
                cost: used,
                budget,
            });
        }
        costs.push(row.iter().map(|c| c / left).collect());
    }
    Ok(Knapsack {
        costs,
        budgets: vec![1.0; knapsack.m()],
    })
}

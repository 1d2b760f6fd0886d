use crate::error::{Error, Result};
use crate::oracle::{Element, Objective};

/// `f(S) = Σ_{e∈S} w_e` with `w_e >= 0`.
#[derive(Debug, Clone)]
pub struct Modular {
    weights: Vec<f64>,
}

impl Modular {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Spec(format!("modular weight {w} is negative")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl Objective for Modular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, set: &[Element]) -> f64 {
        set.iter().map(|&e| self.weights[e]).sum()
    }

    fn kind(&self) -> &'static str {
        "modular"
    }
}

/// Weighted coverage: element `e` covers the items `covers[e]`, and `f(S)`
/// is the total weight of items covered by at least one member. Monotone
/// and submodular.
#[derive(Debug, Clone)]
pub struct Coverage {
    covers: Vec<Vec<usize>>,
    item_weights: Vec<f64>,
}

impl Coverage {
    pub fn new(covers: Vec<Vec<usize>>, item_weights: Vec<f64>) -> Result<Self> {
        let items = item_weights.len();
        for (e, c) in covers.iter().enumerate() {
            if let Some(&i) = c.iter().find(|&&i| i >= items) {
                return Err(Error::Spec(format!("element {e} covers unknown item {i}")));
            }
        }
        if let Some(w) = item_weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Spec(format!("item weight {w} is negative")));
        }
        Ok(Self {
            covers,
            item_weights,
        })
    }

    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    pub fn item_weights(&self) -> &[f64] {
        &self.item_weights
    }
}

impl Objective for Coverage {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn value(&self, set: &[Element]) -> f64 {
        let mut seen = vec![false; self.item_weights.len()];
        let mut total = 0.0;
        for &e in set {
            for &i in &self.covers[e] {
                if !seen[i] {
                    seen[i] = true;
                    total += self.item_weights[i];
                }
            }
        }
        total
    }

    fn kind(&self) -> &'static str {
        "coverage"
    }
}

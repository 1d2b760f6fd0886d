//! Counted value oracles.
//!
//! Every algorithm in this crate measures its cost in evaluations of the
//! objective. [`ValueOracle`] wraps an [`Objective`] and counts each call.
//! Workers running in parallel take a [`ValueOracle::fork`] with a fresh
//! counter and report their count back when they finish.

use std::fmt::Debug;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of an element in the ground set `0..n`.
pub type Element = usize;

/// A set function `f: 2^N -> R>=0`.
///
/// Implementations must be deterministic and free of side effects: the same
/// set (in any order) always yields the same value. Sets never contain
/// duplicates.
pub trait Objective: Send + Sync + Debug {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &[Element]) -> f64;

    /// Short name used in logs and instance files.
    fn kind(&self) -> &'static str;
}

#[derive(Debug)]
pub struct ValueOracle {
    objective: Arc<dyn Objective>,
    calls: AtomicU64,
}

impl ValueOracle {
    pub fn new(objective: Arc<dyn Objective>) -> Self {
        Self {
            objective,
            calls: AtomicU64::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.objective.ground_size()
    }

    pub fn objective(&self) -> &Arc<dyn Objective> {
        &self.objective
    }

    pub fn evaluate(&self, set: &[Element]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.objective.value(set)
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    /// Same objective, counter starting at zero.
    pub fn fork(&self) -> Self {
        Self::new(Arc::clone(&self.objective))
    }

    /// Adds calls made by a forked worker.
    pub fn absorb(&self, calls: u64) {
        self.calls.fetch_add(calls, Ordering::Relaxed);
    }
}

impl Clone for ValueOracle {
    fn clone(&self) -> Self {
        Self {
            objective: Arc::clone(&self.objective),
            calls: AtomicU64::new(self.calls()),
        }
    }
}

/// `f(base ∪ {e}) − f(base)`, using two oracle calls.
pub fn marginal_gain(oracle: &ValueOracle, base: &[Element], e: Element) -> Result<f64> {
    let n = oracle.n();
    if e >= n {
        return Err(Error::IndexOutOfRange { element: e, n });
    }
    let before = oracle.evaluate(base);
    let after = if base.contains(&e) {
        oracle.evaluate(base)
    } else {
        let mut with = Vec::with_capacity(base.len() + 1);
        with.extend_from_slice(base);
        with.push(e);
        oracle.evaluate(&with)
    };
    Ok(after - before)
}

/// `z(S) = f(S ∪ A) − f(A)` for a fixed base set `A`.
///
/// The value of the base is computed once on construction. [`Self::raw`]
/// returns `f(S ∪ A)` without subtracting.
#[derive(Debug)]
pub struct Conditioned<'a> {
    oracle: &'a ValueOracle,
    base: Vec<Element>,
    base_value: f64,
}

impl<'a> Conditioned<'a> {
    pub fn new(oracle: &'a ValueOracle, base: &[Element]) -> Self {
        let base_value = oracle.evaluate(base);
        Self::with_value(oracle, base, base_value)
    }

    /// Uses a base value the caller already paid for.
    pub fn with_value(oracle: &'a ValueOracle, base: &[Element], base_value: f64) -> Self {
        Self {
            oracle,
            base: base.to_vec(),
            base_value,
        }
    }

    pub fn base(&self) -> &[Element] {
        &self.base
    }

    pub fn base_value(&self) -> f64 {
        self.base_value
    }

    pub fn oracle(&self) -> &ValueOracle {
        self.oracle
    }

    pub fn raw(&self, set: &[Element]) -> f64 {
        if self.base.is_empty() {
            return self.oracle.evaluate(set);
        }
        let mut union = Vec::with_capacity(self.base.len() + set.len());
        union.extend_from_slice(&self.base);
        union.extend(set.iter().copied().filter(|e| !self.base.contains(e)));
        self.oracle.evaluate(&union)
    }

    pub fn value(&self, set: &[Element]) -> f64 {
        self.raw(set) - self.base_value
    }
}
